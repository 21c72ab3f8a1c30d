#pragma once

// JSON, CSV and SVG formats used by the command-line tool.
//
// Complex numbers are [re, im] pairs. A component may be a JSON number or a
// decimal string; strings keep full precision in extended-precision runs.
// Parse errors are ParseError exceptions whose message starts with the path
// of the offending field, e.g. "curve.y_coeffs[1][0]".

#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "certpath/darboux.hpp"
#include "certpath/systems.hpp"

namespace certpath::io {

using nlohmann::json;

template <class R>
json real_to_json(const R& x);
template <class R>
R real_from_json(const json& j, const std::string& field);

template <class R>
json complex_to_json(const Complex<R>& z);
template <class R>
Complex<R> complex_from_json(const json& j, const std::string& field);

/// {"deg_y": n, "y_coeffs": [[[re, im], ...], ...]}, y powers ascending,
/// x powers ascending inside each entry.
template <class R>
json poly_to_json(const BivPoly<R>& f);
template <class R>
BivPoly<R> poly_from_json(const json& j, const std::string& field);

/// Array of pieces: {"type": "segment", "from": z, "to": z} or
/// {"type": "arc", "center": z, "radius": r, "start_angle": a, "end_angle": b}.
template <class R>
json path_to_json(const ParamPath<R>& path);
template <class R>
ParamPath<R> path_from_json(const json& j, const std::string& field);

template <class R>
json bound_report_to_json(const BoundReport<R>& rep);

/// Step log: array of {"T", "x", "y", "rho", "Y", "M", "epsilon", "delta"}
/// (bound fields are null for the start point) plus the remaining report
/// fields.
template <class R>
json trace_log_to_json(const TraceLog<R>& log);
template <class R>
std::string trace_log_to_csv(const TraceLog<R>& log);

/// {"equations": [poly, ...], "initial": [z, ...], "target": z}
template <class R>
json system_to_json(const ChainSystem<R>& sys);
template <class R>
ChainSystem<R> system_from_json(const json& j);

template <class R>
json system_log_to_json(const SystemTraceLog<R>& log);
template <class R>
std::string system_log_to_csv(const SystemTraceLog<R>& log);

/// Parses text as JSON; ParseError names `what` on failure.
json parse_json(const std::string& text, const std::string& what);
/// Reads a file, or treats the argument as inline JSON when it starts with
/// '{' or '['.
json load_json(const std::string& path_or_inline);

struct SvgPanel {
    std::string title;
    std::vector<std::vector<std::pair<double, double>>> polylines;
    std::vector<std::pair<double, double>> markers;
};

/// Panels side by side, each with equal axis scaling.
std::string render_svg(const std::vector<SvgPanel>& panels);

}  // namespace certpath::io
