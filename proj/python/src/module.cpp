// evulhunter: fake-transfer detection for EOSIO WebAssembly contracts
// Copyright 2026 The evulhunter Authors.
// SPDX-License-Identifier: Apache-2.0

#include <evulhunter/cfg.hpp>
#include <evulhunter/metrics.hpp>
#include <evulhunter/names.hpp>
#include <evulhunter/parser.hpp>
#include <evulhunter/report.hpp>
#include <evulhunter/whitelist.hpp>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <charconv>

namespace py = pybind11;
using namespace evulhunter;

namespace
{
/// Copies any contiguous buffer (bytes, bytearray, memoryview) into a byte vector.
std::vector<uint8_t> to_bytes(const py::buffer& b)
{
    const auto info = b.request();
    const auto* p = static_cast<const uint8_t*>(info.ptr);
    return {p, p + info.size * info.itemsize};
}

py::object to_python(const nlohmann::json& j)
{
    return py::module_::import("json").attr("loads")(j.dump());
}

uint32_t resolve_function(const wasm_module& m, const std::string& which)
{
    uint32_t index = 0;
    const auto* end = which.data() + which.size();
    std::optional<uint32_t> found;
    if (const auto [p, ec] = std::from_chars(which.data(), end, index); ec == std::errc{} && p == end)
        found = index < m.function_count() ? std::optional{index} : std::nullopt;
    else
        found = find_export(m, which);
    if (!found || m.is_imported_function(*found))
        throw py::key_error{"no defined function '" + which + "'"};
    return *found;
}
}  // namespace

PYBIND11_MODULE(_core, m)
{
    m.doc() = "Fake EOS transfer and fake transfer notice detection for EOSIO contracts.";
    m.attr("__version__") = EVULHUNTER_VERSION;

    static PyObject* parse_exc = nullptr;
    parse_exc = py::register_exception<parser_error>(m, "ParseError", PyExc_ValueError).ptr();
    py::register_exception_translator([](std::exception_ptr p) {
        try
        {
            if (p)
                std::rethrow_exception(p);
        }
        catch (const parser_error& e)
        {
            PyErr_SetString(parse_exc, (std::string{to_string(e.which)} + ": " + e.what()).c_str());
        }
        catch (const whitelist_error& e)
        {
            PyErr_SetString(PyExc_ValueError, e.what());
        }
    });

    m.def("encode_name", [](std::string_view s) { return encode_name(s).value; }, py::arg("name"),
        "Encodes an account name into its 64-bit value. Raises ValueError on invalid input.");
    m.def("decode_name", [](uint64_t v) { return decode_name(account_name{v}); }, py::arg("value"));
    m.def("is_valid_name", [](std::string_view s) { return is_valid_name(s); }, py::arg("name"));

    m.def(
        "analyze",
        [](const py::buffer& wasm, const std::vector<std::string>& extra_accounts,
            const std::optional<std::vector<std::string>>& detectors, const std::string& input) {
            whitelist wl;
            for (const auto& a : extra_accounts)
                wl.add(encode_name(a));
            detector_set which = all_detectors;
            if (detectors)
            {
                which.clear();
                for (const auto& d : *detectors)
                {
                    const auto k = parse_detector(d);
                    if (!k)
                        throw py::value_error{"unknown detector '" + d + "'"};
                    which.insert(*k);
                }
            }
            const auto bytes = to_bytes(wasm);
            analysis_report report;
            {
                py::gil_scoped_release release;
                report = analyze(bytes, wl, which, input);
            }
            return to_python(to_json(report));
        },
        py::arg("wasm"), py::arg("whitelist") = std::vector<std::string>{}, py::arg("detectors") = py::none(),
        py::arg("input") = "",
        "Runs the detectors over a module binary and returns the report as a dict. "
        "`whitelist` lists token accounts accepted besides eosio.token.");

    m.def(
        "dump_cfg",
        [](const py::buffer& wasm, const std::string& function) {
            const auto module = parse_module(to_bytes(wasm));
            const auto& body = module.body(resolve_function(module, function));
            return to_dot(build_cfg(body), body, function);
        },
        py::arg("wasm"), py::arg("function") = "apply", "Graphviz text for one function's control-flow graph.");

    m.def(
        "metrics",
        [](std::size_t tp, std::size_t fp, std::size_t tn, std::size_t fn) {
            return to_python(to_json(confusion{tp, fp, tn, fn}));
        },
        py::arg("tp"), py::arg("fp"), py::arg("tn"), py::arg("fn"));
}
