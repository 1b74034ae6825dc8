#include "lts/cli.hpp"
#include "lts/error.hpp"
#include "lts/io.hpp"
#include "lts/stabilize.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

namespace py = pybind11;

namespace {

// Catalog name or JSON text.
lts::TwistedComponent component_of(const std::string& text) {
  if (auto c = lts::catalog_component(text)) return *c;
  return lts::component_from_json(lts::Json::parse(text));
}

lts::DiscreteModelSet models_of(const std::string& text) {
  if (lts::catalog_model(text, 0)) return lts::model_file_from_json(lts::Json(text)).models;
  return lts::model_file_from_json(lts::Json::parse(text)).models;
}

py::dict class_dict(const lts::SemisimpleClass& s) {
  py::dict d;
  py::list rep;
  for (const auto& q : s.rep.coords) rep.append(lts::to_string(q));
  d["rep"] = rep;
  d["order"] = s.rep.order;
  d["pi0"] = s.pi0;
  d["centralizer"] = lts::cartan_type(s.centralizer_datum);
  d["central"] = s.central;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Exact spectral coefficients: i-numbers, elliptic classes, sigma constants, stabilization checks";

  static py::exception<lts::Error> lts_error(m, "LtsError", PyExc_ValueError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const lts::Error& e) {
      py::set_error(lts_error, (std::string(lts::error_kind_name(e.kind())) + ": " + e.what()).c_str());
    } catch (const lts::Json::exception& e) {
      py::set_error(PyExc_ValueError, e.what());
    }
  });

  m.def("catalog_groups", &lts::catalog_component_names);
  m.def("catalog_models", &lts::catalog_model_names);

  m.def("cartan_type", [](const std::string& text) { return lts::cartan_type(component_of(text).base); },
        py::arg("group"));
  m.def("i_number", [](const std::string& text) { return lts::to_string(lts::i_number(component_of(text))); },
        py::arg("group"));
  m.def(
      "sigma",
      [](const std::string& text) {
        lts::SigmaTable t;
        return lts::to_string(lts::sigma(component_of(text).base, t));
      },
      py::arg("group"));
  m.def(
      "elliptic_classes",
      [](const std::string& text) {
        py::list out;
        for (const auto& s : lts::elliptic_classes(component_of(text))) out.append(class_dict(s));
        return out;
      },
      py::arg("group"));
  m.def(
      "verify_ei",
      [](const std::string& text) {
        lts::SigmaTable t;
        const auto r = lts::verify_ei(component_of(text), t);
        py::dict d;
        d["e"] = lts::to_string(r.e);
        d["i"] = lts::to_string(r.i);
        d["equal"] = r.equal;
        return d;
      },
      py::arg("group"));
  m.def(
      "i_phi",
      [](const std::string& text, std::uint32_t x) {
        const auto ms = models_of(text);
        return lts::to_string(lts::i_phi(ms.models.at(0), x));
      },
      py::arg("model"), py::arg("x"));
  m.def(
      "transfer_factor",
      [](int sm_dim, int r_dim, std::uint32_t eta, std::uint32_t r, std::uint32_t x) {
        lts::ParameterModel pm(0, sm_dim, r_dim);
        return lts::to_string(lts::transfer_factor(pm, lts::Tau{0, eta, r}, x));
      },
      py::arg("sm_dim"), py::arg("r_dim"), py::arg("eta"), py::arg("r"), py::arg("x"));
  m.def(
      "packet_checks",
      [](int sm_dim, int r_dim) {
        lts::ParameterModel pm(0, sm_dim, r_dim);
        return std::make_pair(lts::verify_adjoint(pm), lts::routes_agree(pm));
      },
      py::arg("sm_dim"), py::arg("r_dim"));
  m.def(
      "stabilization_fixture",
      [](const std::string& text) {
        lts::SigmaTable t;
        const auto ms = models_of(text);
        const auto one = lts::constant_vector(ms, lts::GaussianRational{1, 0});
        py::dict d;
        d["discrete_part"] = lts::to_string(lts::discrete_part(ms, one, one));
        d["stable_form"] = lts::to_string(lts::stable_form(ms, one, one, t));
        d["endoscopic_form"] = lts::to_string(lts::endoscopic_form(ms, lts::default_descriptors(ms), one, one, t));
        return d;
      },
      py::arg("models"));
  m.def(
      "run_cli",
      [](const std::vector<std::string>& args) {
        std::ostringstream out, err;
        int code;
        {
          py::gil_scoped_release release;
          code = lts::cli_main(args, out, err);
        }
        return py::make_tuple(code, out.str(), err.str());
      },
      py::arg("args"));
}
