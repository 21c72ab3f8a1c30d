#include "certpath/continuation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace certpath {

template <class R>
R ParamPath<R>::Piece::length() const {
    using std::abs;
    if (kind == Kind::Segment) return magnitude(to - from);
    return radius * abs(end_angle - start_angle);
}

template <class R>
Complex<R> ParamPath<R>::Piece::at(const R& s) const {
    if (kind == Kind::Segment) return from + s * (to - from);
    return center + std::polar(radius, start_angle + s * (end_angle - start_angle));
}

template <class R>
ParamPath<R> ParamPath<R>::segment(const Complex<R>& from, const Complex<R>& to) {
    Piece p;
    p.kind = Kind::Segment;
    p.from = from;
    p.to = to;
    ParamPath path;
    path.append(p);
    return path;
}

template <class R>
ParamPath<R> ParamPath<R>::arc(const Complex<R>& center, const R& radius, const R& start_angle, const R& end_angle) {
    Piece p;
    p.kind = Kind::Arc;
    p.center = center;
    p.radius = radius;
    p.start_angle = start_angle;
    p.end_angle = end_angle;
    ParamPath path;
    path.append(p);
    return path;
}

template <class R>
ParamPath<R>& ParamPath<R>::append(const Piece& piece) {
    if (piece.kind == Kind::Arc && !(piece.radius > R(0)))
        throw Error(ErrorKind::InvalidArgument, "arc radius must be positive");
    const R len = piece.length();
    if (!(len > R(0)) || !is_finite(len)) throw Error(ErrorKind::InvalidArgument, "path piece has zero length");
    if (!pieces_.empty()) {
        const Complex<R> prev = pieces_.back().at(R(1));
        const Complex<R> next = piece.at(R(0));
        if (magnitude(prev - next) > R(1e-12) * std::max(R(1), magnitude(prev)))
            throw Error(ErrorKind::InvalidArgument, "path piece does not start where the previous one ends");
    }
    pieces_.push_back(piece);
    return *this;
}

template <class R>
ParamPath<R>& ParamPath<R>::then_segment(const Complex<R>& to) {
    Piece p;
    p.kind = Kind::Segment;
    p.from = end();
    p.to = to;
    return append(p);
}

template <class R>
ParamPath<R>& ParamPath<R>::then_arc(const Complex<R>& center, const R& radius, const R& start_angle,
                                     const R& end_angle) {
    Piece p;
    p.kind = Kind::Arc;
    p.center = center;
    p.radius = radius;
    p.start_angle = start_angle;
    p.end_angle = end_angle;
    return append(p);
}

template <class R>
R ParamPath<R>::length() const {
    R s(0);
    for (const auto& p : pieces_) s += p.length();
    return s;
}

template <class R>
std::vector<R> ParamPath<R>::breaks() const {
    std::vector<R> b{R(0)};
    const R total = length();
    R acc(0);
    for (std::size_t i = 0; i < pieces_.size(); ++i) {
        acc += pieces_[i].length();
        b.push_back(i + 1 == pieces_.size() ? R(1) : acc / total);
    }
    return b;
}

template <class R>
std::pair<std::size_t, R> ParamPath<R>::locate(const R& T) const {
    if (pieces_.empty()) throw Error(ErrorKind::InvalidArgument, "empty path");
    const R t = std::clamp(T, R(0), R(1));
    const auto b = breaks();
    std::size_t i = 0;
    while (i + 1 < pieces_.size() && t > b[i + 1]) ++i;
    return {i, (t - b[i]) / (b[i + 1] - b[i])};
}

template <class R>
Complex<R> ParamPath<R>::point(const R& T) const {
    const auto [i, s] = locate(T);
    return pieces_[i].at(std::clamp(s, R(0), R(1)));
}

template <class R>
std::vector<std::pair<R, R>> ParamPath<R>::windows() const {
    using std::abs;
    using std::ceil;
    const auto b = breaks();
    std::vector<std::pair<R, R>> w;
    for (std::size_t i = 0; i < pieces_.size(); ++i) {
        int parts = 1;
        if (pieces_[i].kind == Kind::Arc) {
            const R turns = abs(pieces_[i].end_angle - pieces_[i].start_angle) / pi<R>();
            parts = std::max(1, static_cast<int>(to_double(R(ceil(turns - R(1e-12))))));
        }
        for (int j = 0; j < parts; ++j) {
            const R lo = j == 0 ? b[i] : b[i] + (b[i + 1] - b[i]) * R(j) / R(parts);
            const R hi = j + 1 == parts ? b[i + 1] : b[i] + (b[i + 1] - b[i]) * R(j + 1) / R(parts);
            w.emplace_back(lo, hi);
        }
    }
    return w;
}

template <class R>
ParamPath<R> ParamPath<R>::reversed() const {
    ParamPath out;
    for (auto it = pieces_.rbegin(); it != pieces_.rend(); ++it) {
        Piece p = *it;
        std::swap(p.from, p.to);
        std::swap(p.start_angle, p.end_angle);
        out.pieces_.push_back(p);
    }
    return out;
}

template <class R>
std::size_t match_nearest(const RootSet<R>& fiber, const Complex<R>& y, double ambiguity_tol) {
    if (fiber.roots.empty()) throw Error(ErrorKind::InvalidArgument, "empty fiber");
    std::size_t best = 0;
    R d1 = std::numeric_limits<R>::infinity();
    R d2 = std::numeric_limits<R>::infinity();
    for (std::size_t i = 0; i < fiber.roots.size(); ++i) {
        const R d = magnitude(fiber.roots[i] - y);
        if (d < d1) {
            d2 = d1;
            d1 = d;
            best = i;
        } else if (d < d2) {
            d2 = d;
        }
    }
    if (d2 < std::numeric_limits<R>::infinity() && d2 - d1 <= R(ambiguity_tol) * std::max(R(1), d2))
        throw Error(ErrorKind::AmbiguousMatch, "two fiber roots are equally close to the previous value");
    return best;
}

namespace {

template <class R>
std::string describe_point(const R& T, const Complex<R>& x) {
    return "T = " + to_decimal(T) + ", x = (" + to_decimal(x.real()) + ", " + to_decimal(x.imag()) + ")";
}

}  // namespace

template <class R>
TraceLog<R> trace_curve(const CurveAnalysis<R>& curve, const ParamPath<R>& path, const Complex<R>& y0,
                        const TraceOptions& opts) {
    if (!(opts.safety_factor > 0.0 && opts.safety_factor < 1.0))
        throw Error(ErrorKind::InvalidArgument, "safety_factor must lie in (0, 1)");
    if (!(opts.rho_fraction > 0.0 && opts.rho_fraction < 1.0))
        throw Error(ErrorKind::InvalidArgument, "rho_fraction must lie in (0, 1)");

    TraceLog<R> log;
    const R path_length = path.length();
    auto failure = [&](ErrorKind kind, const std::string& msg, const Complex<R>& x) {
        log.outcome = Outcome::Failure;
        log.reason = msg;
        const R cd = min_distance_to<R>(std::span<const Complex<R>>(curve.critical), x);
        const bool singular = cd <= R(1e-8) * std::max(R(1), path_length);
        return TraceFailure<R>(kind, msg, log, cd, singular);
    };

    R T(0);
    Complex<R> x = path.start();
    if (min_distance_to<R>(std::span<const Complex<R>>(curve.critical), x) <=
        R(64) * RealTraits<R>::epsilon() * std::max(R(1), magnitude(x)))
        throw failure(ErrorKind::CriticalPointOnPath, "path starts at a critical point", x);
    RootSet<R> fib;
    try {
        fib = fiber(curve.f, x, curve.root_tol);
    } catch (const Error& e) {
        throw failure(ErrorKind::CriticalPointOnPath, std::string("start fiber: ") + e.what(), x);
    }
    {
        R scale(0);
        R py(1);
        for (const auto& a : curve.f.y_coeffs()) {
            scale += magnitude(a(x)) * py;
            py *= magnitude(y0);
        }
        if (magnitude(curve.f(x, y0)) > R(opts.start_tol) * std::max(scale, R(1)))
            throw Error(ErrorKind::InvalidArgument, "starting value does not lie on the curve");
    }
    Complex<R> y;
    try {
        y = fib.roots[match_nearest(fib, y0, opts.ambiguity_tol)];
    } catch (const Error& e) {
        throw failure(e.kind(), e.what(), x);
    }
    log.steps.push_back({T, x, y, std::nullopt});

    for (const auto& [lo_window, hi_window] : path.windows()) {
        (void)lo_window;
        const R Tb = hi_window;
        const Complex<R> xb = path.point(Tb);
        while (T < Tb) {
            if (log.step_count() >= opts.max_steps)
                throw failure(ErrorKind::NoProgress, "step budget exhausted at " + describe_point(T, x), x);

            BoundReport<R> rep;
            try {
                const R eps = fib.size() >= 2 ? min_pairwise_distance(fib) / R(2) : R(opts.single_root_epsilon);
                if (!(eps > R(0))) throw Error(ErrorKind::CriticalFiber, "coincident fiber roots");
                rep = compute_delta(curve, x, eps, opts.rho_fraction, fib);
            } catch (const Error& e) {
                throw failure(ErrorKind::CriticalPointOnPath,
                              "bound unavailable at " + describe_point(T, x) + " (" + e.what() + ")", x);
            }
            if (!(rep.epsilon >= R(opts.precision_margin) * fiber_error_estimate(curve, x, rep.fiber)))
                throw failure(ErrorKind::NoProgress,
                              "fiber roots no longer resolved at working precision at " + describe_point(T, x), x);

            const R reach = R(opts.safety_factor) * rep.delta;
            R Tn;
            if (magnitude(xb - x) <= reach) {
                Tn = Tb;
            } else {
                R lo = T;
                R hi = Tb;
                const R rel(opts.bisection_rel_width);
                while (hi - lo > rel * (hi - T)) {
                    const R mid = (lo + hi) / R(2);
                    if (magnitude(path.point(mid) - x) <= reach)
                        lo = mid;
                    else
                        hi = mid;
                }
                Tn = lo;
                if (Tn - T < R(opts.min_step))
                    throw failure(ErrorKind::NoProgress,
                                  "step below " + to_decimal(R(opts.min_step)) + " at " + describe_point(T, x), x);
            }

            const Complex<R> xn = Tn == Tb ? xb : path.point(Tn);
            RootSet<R> next;
            std::size_t idx = 0;
            try {
                next = fiber(curve.f, xn, curve.root_tol);
                idx = match_nearest(next, y, opts.ambiguity_tol);
            } catch (const Error& e) {
                const ErrorKind kind =
                    e.kind() == ErrorKind::AmbiguousMatch ? ErrorKind::AmbiguousMatch : ErrorKind::CriticalPointOnPath;
                throw failure(kind, std::string(e.what()) + " at " + describe_point(Tn, xn), x);
            }
            T = Tn;
            x = xn;
            y = next.roots[idx];
            fib = std::move(next);
            log.steps.push_back({T, x, y, std::move(rep)});
        }
    }
    log.outcome = Outcome::Success;
    return log;
}

template <class R>
TraceLog<R> trace_curve(const BivPoly<R>& f, const ParamPath<R>& path, const Complex<R>& y0,
                        const TraceOptions& opts) {
    return trace_curve(CurveAnalysis<R>::analyze(f), path, y0, opts);
}

#define CERTPATH_INSTANTIATE_CONT(R)                                                                            \
    template class ParamPath<R>;                                                                                \
    template std::size_t match_nearest(const RootSet<R>&, const Complex<R>&, double);                           \
    template TraceLog<R> trace_curve(const CurveAnalysis<R>&, const ParamPath<R>&, const Complex<R>&,           \
                                     const TraceOptions&);                                                      \
    template TraceLog<R> trace_curve(const BivPoly<R>&, const ParamPath<R>&, const Complex<R>&, const TraceOptions&);

CERTPATH_INSTANTIATE_CONT(double)
CERTPATH_INSTANTIATE_CONT(MpReal)

}  // namespace certpath
