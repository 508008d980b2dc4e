#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "ncg/index.hpp"

namespace py = pybind11;
using namespace ncg;

namespace {

Model make_model(const std::string& manifold, int N, int pad,
                 std::pair<int, int> kappa) {
    Model m;
    m.manifold = manifold_from_name(manifold);
    m.N = N;
    m.pad = pad;
    m.kappa_num = kappa.first;
    m.kappa_den = kappa.second;
    return m;
}

py::dict report_dict(const IndexReport& rep) {
    py::dict d;
    d["value"] = rep.value;
    d["residual"] = rep.residual;
    d["method"] = rep.method;
    d["oracle"] = rep.oracle ? py::cast(*rep.oracle) : py::none();
    d["companion"] = rep.companion ? py::cast(*rep.companion) : py::none();
    return d;
}

}  // namespace

PYBIND11_MODULE(_ncglab, m) {
    m.doc() = "finite-rank Toeplitz models, cyclic cochains, and index formulas";

    py::class_<Model>(m, "Model")
        .def(py::init(&make_model), py::arg("manifold"), py::arg("N"),
             py::arg("pad"), py::arg("kappa") = std::pair<int, int>{1, 1})
        .def_readonly("N", &Model::N)
        .def_readonly("pad", &Model::pad)
        .def_property_readonly("manifold",
                               [](const Model& mod) {
                                   return std::string(
                                       manifold_name(mod.manifold));
                               })
        .def_property_readonly("dim",
                               [](const Model& mod) { return model_dim(mod); });

    py::class_<FunctionRep>(m, "Symbol")
        .def("__add__",
             [](FunctionRep a, const FunctionRep& b) {
                 a += b;
                 return a;
             })
        .def("__mul__",
             [](FunctionRep a, cd s) {
                 a *= s;
                 return a;
             })
        .def("__rmul__",
             [](FunctionRep a, cd s) {
                 a *= s;
                 return a;
             })
        .def_property_readonly("bandwidth", &FunctionRep::bandwidth);

    m.def("s1_mode", &s1_mode, py::arg("k"), py::arg("coeff") = cd(1.0),
          "the S1 Fourier mode z^k");
    m.def("s3_monomial", &s3_monomial, py::arg("a1"), py::arg("a2"),
          py::arg("b1"), py::arg("b2"), py::arg("coeff") = cd(1.0),
          "the S3 monomial z1^a1 z2^a2 zbar1^b1 zbar2^b2");
    m.def("unit_symbol",
          [](const std::string& manifold) {
              return unit_function(manifold_from_name(manifold));
          },
          py::arg("manifold") = "S1");

    py::class_<ASCochain>(m, "Cochain")
        .def_readonly("degree", &ASCochain::degree)
        .def("to_json", [](const ASCochain& c) { return cochain_to_json(c); });
    m.def("cochain_from_json",
          [](const std::string& s) { return cochain_from_json(s); });
    m.def("antisymmetrize",
          [](const std::string& manifold, const std::vector<FunctionRep>& fs,
             cd coeff) {
              require(!fs.empty(), "antisymmetrize: empty tuple");
              return antisymmetrize(manifold_from_name(manifold),
                                    static_cast<int>(fs.size()) - 1,
                                    {{coeff, fs}});
          },
          py::arg("manifold"), py::arg("symbols"), py::arg("coeff") = cd(1.0));

    m.def("toeplitz", &toeplitz, py::arg("symbol"), py::arg("model"));
    m.def("interior_trace", &interior_trace, py::arg("op"), py::arg("model"));
    m.def("winding_number", &winding_number, py::arg("symbol"));
    m.def("multicommutator", &multicommutator, py::arg("ops"));
    m.def("lambda_integral", &lambda_integral, py::arg("cochain"),
          py::arg("model"));

    m.def("fredholm_index",
          [](const Op& D, const Op& Q, const Model& model,
             const py::object& symbol) {
              IndexReport rep =
                  symbol.is_none()
                      ? fredholm_index(D, Q, model)
                      : fredholm_index(D, Q, model,
                                       symbol.cast<FunctionRep>());
              return report_dict(rep);
          },
          py::arg("D"), py::arg("Q"), py::arg("model"),
          py::arg("symbol") = py::none());
    m.def("odd_index",
          [](const Op& P, const ASCochain& phi, const Model& model) {
              return report_dict(ind_odd_toeplitz(P, phi, model));
          },
          py::arg("P"), py::arg("phi"), py::arg("model"));
    m.def("suspended_index",
          [](const Op& D, const ASCochain& phi, const Model& model,
             int cutoff) {
              return report_dict(suspended_index(D, phi, model, cutoff));
          },
          py::arg("D"), py::arg("phi"), py::arg("model"),
          py::arg("cutoff") = 3);
    m.def("heat_parametrix",
          [](const Op& D, double t) {
              LiftData L = heat_parametrix(D, t);
              py::dict d;
              d["Q"] = L.Q;
              d["S0"] = L.S0;
              d["S1"] = L.S1;
              return d;
          },
          py::arg("D"), py::arg("t"));
    m.def("selfadjoint_toeplitz", &selfadjoint_toeplitz, py::arg("symbol"),
          py::arg("model"), py::arg("shift") = 0.0);
    m.def("positive_spectral_projection", &positive_spectral_projection,
          py::arg("D"));
}
