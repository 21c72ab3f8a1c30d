#include "certpath/io.hpp"

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <limits>
#include <sstream>

namespace certpath::io {

namespace {

[[noreturn]] void fail(const std::string& field, const std::string& msg) {
    throw Error(ErrorKind::ParseError, field + ": " + msg);
}

const json& member(const json& j, const char* key, const std::string& field) {
    if (!j.is_object()) fail(field, "expected an object");
    auto it = j.find(key);
    if (it == j.end()) fail(field + "." + key, "missing field");
    return *it;
}

std::string index(const std::string& field, std::size_t i) {
    return field + "[" + std::to_string(i) + "]";
}

template <class R>
json optional_real(const R& x) {
    if (!is_finite(x)) return nullptr;
    return real_to_json(x);
}

std::string csv_real(double x) {
    std::ostringstream os;
    os << std::setprecision(17) << x;
    return os.str();
}

}  // namespace

template <>
json real_to_json<double>(const double& x) {
    return x;
}

template <>
json real_to_json<MpReal>(const MpReal& x) {
    return to_decimal(x);
}

template <class R>
R real_from_json(const json& j, const std::string& field) {
    R v;
    if (j.is_number()) {
        v = R(j.get<double>());
    } else if (j.is_string()) {
        try {
            v = from_decimal<R>(j.get<std::string>());
        } catch (const Error&) {
            fail(field, "not a decimal number: '" + j.get<std::string>() + "'");
        }
    } else {
        fail(field, "expected a number or a decimal string");
    }
    if (!is_finite(v)) fail(field, "value is not finite");
    return v;
}

template <class R>
json complex_to_json(const Complex<R>& z) {
    return json::array({real_to_json(z.real()), real_to_json(z.imag())});
}

template <class R>
Complex<R> complex_from_json(const json& j, const std::string& field) {
    if (j.is_number() || j.is_string()) return Complex<R>(real_from_json<R>(j, field));
    if (!j.is_array() || j.size() != 2) fail(field, "expected a [re, im] pair");
    return {real_from_json<R>(j[0], field + "[0]"), real_from_json<R>(j[1], field + "[1]")};
}

template <class R>
json poly_to_json(const BivPoly<R>& f) {
    json ys = json::array();
    for (const auto& a : f.y_coeffs()) {
        json xs = json::array();
        for (const auto& c : a.coeffs()) xs.push_back(complex_to_json(c));
        ys.push_back(xs);
    }
    return {{"deg_y", f.deg_y()}, {"y_coeffs", ys}};
}

template <class R>
BivPoly<R> poly_from_json(const json& j, const std::string& field) {
    const json& ys = member(j, "y_coeffs", field);
    const std::string yfield = field + ".y_coeffs";
    if (!ys.is_array() || ys.empty()) fail(yfield, "expected a non-empty array");
    std::vector<UniPoly<R>> coeffs;
    for (std::size_t k = 0; k < ys.size(); ++k) {
        const json& xs = ys[k];
        if (!xs.is_array() || xs.empty()) fail(index(yfield, k), "expected a non-empty array of [re, im] pairs");
        std::vector<Complex<R>> c;
        for (std::size_t i = 0; i < xs.size(); ++i)
            c.push_back(complex_from_json<R>(xs[i], index(index(yfield, k), i)));
        coeffs.push_back(UniPoly<R>::exact(std::move(c)));
    }
    BivPoly<R> f(std::move(coeffs));
    if (j.contains("deg_y")) {
        const json& d = j["deg_y"];
        if (!d.is_number_integer()) fail(field + ".deg_y", "expected an integer");
        if (d.get<int>() != f.deg_y())
            fail(field + ".deg_y", "declares " + std::to_string(d.get<int>()) + " but y_coeffs give degree " +
                                       std::to_string(f.deg_y()));
    }
    return f;
}

template <class R>
json path_to_json(const ParamPath<R>& path) {
    using Kind = typename ParamPath<R>::Kind;
    json out = json::array();
    for (const auto& p : path.pieces()) {
        if (p.kind == Kind::Segment)
            out.push_back({{"type", "segment"}, {"from", complex_to_json(p.from)}, {"to", complex_to_json(p.to)}});
        else
            out.push_back({{"type", "arc"},
                           {"center", complex_to_json(p.center)},
                           {"radius", real_to_json(p.radius)},
                           {"start_angle", real_to_json(p.start_angle)},
                           {"end_angle", real_to_json(p.end_angle)}});
    }
    return out;
}

template <class R>
ParamPath<R> path_from_json(const json& j, const std::string& field) {
    using Piece = typename ParamPath<R>::Piece;
    using Kind = typename ParamPath<R>::Kind;
    if (!j.is_array() || j.empty()) fail(field, "expected a non-empty array of path pieces");
    ParamPath<R> path;
    for (std::size_t i = 0; i < j.size(); ++i) {
        const std::string pf = index(field, i);
        const json& type = member(j[i], "type", pf);
        if (!type.is_string()) fail(pf + ".type", "expected \"segment\" or \"arc\"");
        Piece p;
        if (type == "segment") {
            p.kind = Kind::Segment;
            p.from = complex_from_json<R>(member(j[i], "from", pf), pf + ".from");
            p.to = complex_from_json<R>(member(j[i], "to", pf), pf + ".to");
        } else if (type == "arc") {
            p.kind = Kind::Arc;
            p.center = complex_from_json<R>(member(j[i], "center", pf), pf + ".center");
            p.radius = real_from_json<R>(member(j[i], "radius", pf), pf + ".radius");
            p.start_angle = real_from_json<R>(member(j[i], "start_angle", pf), pf + ".start_angle");
            p.end_angle = real_from_json<R>(member(j[i], "end_angle", pf), pf + ".end_angle");
        } else {
            fail(pf + ".type", "expected \"segment\" or \"arc\"");
        }
        try {
            path.append(p);
        } catch (const Error& e) {
            fail(pf, e.what());
        }
    }
    return path;
}

template <class R>
json bound_report_to_json(const BoundReport<R>& rep) {
    json upper = json::array();
    for (const auto& u : rep.coeff_upper) upper.push_back(real_to_json(u));
    json fib = json::array();
    for (const auto& r : rep.fiber.roots) fib.push_back(complex_to_json(r));
    return {{"rho", real_to_json(rep.rho)},
            {"Y", real_to_json(rep.Y)},
            {"M", real_to_json(rep.M)},
            {"epsilon", real_to_json(rep.epsilon)},
            {"delta", real_to_json(rep.delta)},
            {"coeff_upper", upper},
            {"coeff_lower", real_to_json(rep.coeff_lower)},
            {"fiber", fib},
            {"fiber_residual", real_to_json(rep.fiber.residual_bound)},
            {"critical_distance", optional_real(rep.critical_distance)}};
}

template <class R>
json trace_log_to_json(const TraceLog<R>& log) {
    json steps = json::array();
    for (const auto& s : log.steps) {
        json rec = {{"T", real_to_json(s.T)}, {"x", complex_to_json(s.x)}, {"y", complex_to_json(s.y)}};
        if (s.report) {
            const json rep = bound_report_to_json(*s.report);
            for (auto it = rep.begin(); it != rep.end(); ++it) rec[it.key()] = *it;
        } else {
            for (const char* k : {"rho", "Y", "M", "epsilon", "delta"}) rec[k] = nullptr;
        }
        steps.push_back(rec);
    }
    return steps;
}

template <class R>
std::string trace_log_to_csv(const TraceLog<R>& log) {
    std::ostringstream os;
    os << "T,x_re,x_im,y_re,y_im,rho,Y,M,epsilon,delta\n";
    for (const auto& s : log.steps) {
        os << csv_real(to_double(s.T)) << ',' << csv_real(to_double(s.x.real())) << ','
           << csv_real(to_double(s.x.imag())) << ',' << csv_real(to_double(s.y.real())) << ','
           << csv_real(to_double(s.y.imag()));
        if (s.report) {
            const auto& r = *s.report;
            for (const R* v : {&r.rho, &r.Y, &r.M, &r.epsilon, &r.delta}) os << ',' << csv_real(to_double(*v));
        } else {
            os << ",,,,,";
        }
        os << '\n';
    }
    return os.str();
}

template <class R>
json system_to_json(const ChainSystem<R>& sys) {
    json eqs = json::array();
    for (const auto& p : sys.equations) eqs.push_back(poly_to_json(p));
    json init = json::array();
    for (const auto& z : sys.initial) init.push_back(complex_to_json(z));
    return {{"equations", eqs}, {"initial", init}, {"target", complex_to_json(sys.target)}};
}

template <class R>
ChainSystem<R> system_from_json(const json& j) {
    ChainSystem<R> sys;
    const json& eqs = member(j, "equations", "system");
    if (!eqs.is_array() || eqs.empty()) fail("equations", "expected a non-empty array of polynomials");
    for (std::size_t k = 0; k < eqs.size(); ++k) sys.equations.push_back(poly_from_json<R>(eqs[k], index("equations", k)));
    const json& init = member(j, "initial", "system");
    if (!init.is_array()) fail("initial", "expected an array of [re, im] pairs");
    for (std::size_t k = 0; k < init.size(); ++k) sys.initial.push_back(complex_from_json<R>(init[k], index("initial", k)));
    if (sys.initial.size() != sys.equations.size() + 1)
        fail("initial", "expected " + std::to_string(sys.equations.size() + 1) + " values, got " +
                            std::to_string(sys.initial.size()));
    sys.target = complex_from_json<R>(member(j, "target", "system"), "target");
    return sys;
}

template <class R>
json system_log_to_json(const SystemTraceLog<R>& log) {
    json rounds = json::array();
    for (const auto& r : log.rounds) {
        json pos = json::array();
        for (const auto& z : r.positions) pos.push_back(complex_to_json(z));
        json reps = json::array();
        for (const auto& rep : r.reports) reps.push_back(bound_report_to_json(rep));
        json eps = json::array();
        for (const auto& e : r.epsilon_primes) eps.push_back(real_to_json(e));
        rounds.push_back({{"T", real_to_json(r.T)},
                          {"s", real_to_json(r.s)},
                          {"positions", pos},
                          {"reports", reps},
                          {"epsilon_primes", eps},
                          {"halvings", r.halvings}});
    }
    json init = json::array();
    for (const auto& z : log.initial) init.push_back(complex_to_json(z));
    return {{"outcome", log.outcome == Outcome::Success ? "success" : "failure"},
            {"reason", log.reason},
            {"halvings", log.halvings},
            {"initial", init},
            {"rounds", rounds}};
}

template <class R>
std::string system_log_to_csv(const SystemTraceLog<R>& log) {
    std::ostringstream os;
    os << "round,s,T,halvings,k,x_re,x_im,epsilon_prime,rho,Y,M,epsilon,delta\n";
    for (std::size_t i = 0; i < log.rounds.size(); ++i) {
        const auto& r = log.rounds[i];
        for (std::size_t k = 0; k < r.positions.size(); ++k) {
            os << i + 1 << ',' << csv_real(to_double(r.s)) << ',' << csv_real(to_double(r.T)) << ',' << r.halvings
               << ',' << k << ',' << csv_real(to_double(r.positions[k].real())) << ','
               << csv_real(to_double(r.positions[k].imag())) << ',' << csv_real(to_double(r.epsilon_primes[k]));
            if (k >= 1) {
                const auto& rep = r.reports[k - 1];
                for (const R* v : {&rep.rho, &rep.Y, &rep.M, &rep.epsilon, &rep.delta})
                    os << ',' << csv_real(to_double(*v));
            } else {
                os << ",,,,,";
            }
            os << '\n';
        }
    }
    return os.str();
}

json parse_json(const std::string& text, const std::string& what) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        fail(what, std::string("malformed JSON (") + e.what() + ")");
    }
}

json load_json(const std::string& path_or_inline) {
    const auto first = path_or_inline.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && (path_or_inline[first] == '{' || path_or_inline[first] == '['))
        return parse_json(path_or_inline, "input");
    std::ifstream in(path_or_inline);
    if (!in) fail("input", "cannot open '" + path_or_inline + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_json(ss.str(), path_or_inline);
}

std::string render_svg(const std::vector<SvgPanel>& panels) {
    const double size = 420.0;
    const double pad = 30.0;
    std::ostringstream os;
    os << std::setprecision(6);
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << size * static_cast<double>(panels.size())
       << "\" height=\"" << size + pad << "\">\n";
    static const char* colours[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e"};
    for (std::size_t p = 0; p < panels.size(); ++p) {
        const SvgPanel& panel = panels[p];
        double xmin = std::numeric_limits<double>::infinity(), xmax = -xmin, ymin = xmin, ymax = -xmin;
        auto grow = [&](const std::pair<double, double>& q) {
            xmin = std::min(xmin, q.first);
            xmax = std::max(xmax, q.first);
            ymin = std::min(ymin, q.second);
            ymax = std::max(ymax, q.second);
        };
        for (const auto& line : panel.polylines) std::for_each(line.begin(), line.end(), grow);
        std::for_each(panel.markers.begin(), panel.markers.end(), grow);
        if (!(xmin <= xmax)) xmin = ymin = -1, xmax = ymax = 1;
        const double span = std::max({xmax - xmin, ymax - ymin, 1e-12}) * 1.1;
        const double cx = (xmin + xmax) / 2, cy = (ymin + ymax) / 2;
        const double ox = size * static_cast<double>(p);
        const double scale = (size - 2 * pad) / span;
        auto sx = [&](double x) { return ox + size / 2 + (x - cx) * scale; };
        auto sy = [&](double y) { return pad + (size - 2 * pad) / 2 - (y - cy) * scale + pad / 2; };
        os << "<rect x=\"" << ox + 2 << "\" y=\"2\" width=\"" << size - 4 << "\" height=\"" << size + pad - 4
           << "\" fill=\"white\" stroke=\"#999\"/>\n";
        os << "<text x=\"" << ox + pad << "\" y=\"" << pad * 0.8 << "\" font-family=\"sans-serif\" font-size=\"14\">"
           << panel.title << "</text>\n";
        for (std::size_t l = 0; l < panel.polylines.size(); ++l) {
            os << "<polyline fill=\"none\" stroke-width=\"1.5\" stroke=\"" << colours[l % 5] << "\" points=\"";
            for (const auto& q : panel.polylines[l]) os << sx(q.first) << ',' << sy(q.second) << ' ';
            os << "\"/>\n";
        }
        for (const auto& q : panel.markers)
            os << "<circle cx=\"" << sx(q.first) << "\" cy=\"" << sy(q.second) << "\" r=\"3\" fill=\"black\"/>\n";
    }
    os << "</svg>\n";
    return os.str();
}

#define CERTPATH_INSTANTIATE_IO(R)                                             \
    template R real_from_json<R>(const json&, const std::string&);             \
    template json complex_to_json(const Complex<R>&);                          \
    template Complex<R> complex_from_json<R>(const json&, const std::string&); \
    template json poly_to_json(const BivPoly<R>&);                             \
    template BivPoly<R> poly_from_json<R>(const json&, const std::string&);    \
    template json path_to_json(const ParamPath<R>&);                           \
    template ParamPath<R> path_from_json<R>(const json&, const std::string&);  \
    template json bound_report_to_json(const BoundReport<R>&);                 \
    template json trace_log_to_json(const TraceLog<R>&);                       \
    template std::string trace_log_to_csv(const TraceLog<R>&);                 \
    template json system_to_json(const ChainSystem<R>&);                       \
    template ChainSystem<R> system_from_json<R>(const json&);                  \
    template json system_log_to_json(const SystemTraceLog<R>&);                \
    template std::string system_log_to_csv(const SystemTraceLog<R>&);

CERTPATH_INSTANTIATE_IO(double)
CERTPATH_INSTANTIATE_IO(MpReal)

}  // namespace certpath::io
