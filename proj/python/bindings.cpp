#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "twrc/cli.hpp"
#include "twrc/uplink.hpp"

namespace py = pybind11;

namespace {

py::tuple run(const std::vector<std::string>& args, const std::string& stdinText) {
    std::istringstream in(stdinText);
    std::ostringstream out, err;
    const int code = twrc::run_cli(args, in, out, err);
    return py::make_tuple(code, out.str(), err.str());
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Half-bit gap certification for two-pair two-way relay channels";
    m.def("run_cli", &run, py::arg("args"), py::arg("stdin") = "",
          "Run a CLI command; returns (exit code, stdout, stderr).");
    m.def("gaussian_rate", &twrc::gaussian_rate, py::arg("p"), py::arg("interference"), py::arg("sigmaR2"));
    m.def("lattice_rate", &twrc::lattice_rate, py::arg("p"), py::arg("interference"), py::arg("sigmaR2"));
    m.attr("EXIT_OK") = twrc::kExitOk;
    m.attr("EXIT_CERT_FAILURE") = twrc::kExitCertFailure;
    m.attr("EXIT_VALIDATION") = twrc::kExitValidation;
}
