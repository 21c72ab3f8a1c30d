#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "certpath/bounds.hpp"

namespace certpath {

/// Piecewise path in the x-plane, parameterized by T in [0, 1]. Each piece
/// gets a share of [0, 1] proportional to its length, so speed is uniform.
template <class R>
class ParamPath {
public:
    enum class Kind { Segment, Arc };
    struct Piece {
        Kind kind = Kind::Segment;
        Complex<R> from, to;  // Segment
        Complex<R> center;    // Arc
        R radius = R(0);
        R start_angle = R(0);
        R end_angle = R(0);   // > start_angle means counterclockwise
        R length() const;
        Complex<R> at(const R& s) const;  // s in [0, 1]
    };

    static ParamPath segment(const Complex<R>& from, const Complex<R>& to);
    static ParamPath arc(const Complex<R>& center, const R& radius, const R& start_angle, const R& end_angle);

    /// Appends a piece; throws InvalidArgument if it does not start where the
    /// path currently ends (within 1e-12 relative).
    ParamPath& append(const Piece& piece);
    ParamPath& then_segment(const Complex<R>& to);
    ParamPath& then_arc(const Complex<R>& center, const R& radius, const R& start_angle, const R& end_angle);

    const std::vector<Piece>& pieces() const { return pieces_; }
    R length() const;
    Complex<R> point(const R& T) const;
    Complex<R> start() const { return point(R(0)); }
    Complex<R> end() const { return point(R(1)); }

    /// Consecutive T-intervals along which |x(t) - x(t0)| is non-decreasing
    /// for every t0 in the interval: segments whole, arcs in pieces of at most
    /// half a turn.
    std::vector<std::pair<R, R>> windows() const;

    ParamPath reversed() const;

private:
    std::pair<std::size_t, R> locate(const R& T) const;
    std::vector<R> breaks() const;

    std::vector<Piece> pieces_;
};

template <class R>
struct TraceStep {
    R T = R(0);
    Complex<R> x;
    Complex<R> y;
    /// Bound that certified the move from the previous step; empty for the
    /// start point.
    std::optional<BoundReport<R>> report;
};

enum class Outcome { Success, Failure };

template <class R>
struct TraceLog {
    std::vector<TraceStep<R>> steps;
    Outcome outcome = Outcome::Failure;
    std::string reason;

    /// Number of accepted T -> T* transitions.
    std::size_t step_count() const { return steps.empty() ? 0 : steps.size() - 1; }
    const Complex<R>& final_y() const { return steps.back().y; }
};

/// Failure of a trace; carries the partial log and a singularity diagnosis.
template <class R>
class TraceFailure : public Error {
public:
    TraceFailure(ErrorKind kind, const std::string& what, TraceLog<R> log, R critical_distance,
                 bool singular_on_path)
        : Error(kind, what),
          log_(std::move(log)),
          critical_distance_(std::move(critical_distance)),
          singular_on_path_(singular_on_path) {}

    const TraceLog<R>& log() const { return log_; }
    /// Distance from the last accepted x to the critical set.
    const R& critical_distance() const { return critical_distance_; }
    /// True when the critical set is within 1e-8 * max(1, path length) of the
    /// last accepted point, i.e. the path runs into a singularity.
    bool singular_on_path() const { return singular_on_path_; }

private:
    TraceLog<R> log_;
    R critical_distance_;
    bool singular_on_path_;
};

struct TraceOptions {
    double rho_fraction = 0.5;
    double safety_factor = 0.99;
    /// Smallest admissible step in T.
    double min_step = 1e-13;
    /// Bisection stops at this width relative to the probed interval.
    double bisection_rel_width = 1e-3;
    /// epsilon used when the fiber has a single point.
    double single_root_epsilon = 1.0;
    /// Two fiber roots whose distances to the previous value differ by less
    /// than this (relative) make the match ambiguous.
    double ambiguity_tol = 1e-12;
    /// A step needs epsilon >= precision_margin * (estimated root error);
    /// otherwise the fiber is not resolved at the working precision and the
    /// trace stops with NoProgress.
    double precision_margin = 1e3;
    /// Relative backward error accepted for the starting value.
    double start_tol = 1e-8;
    std::size_t max_steps = 1000000;
};

/// Certified continuation along `path` starting from the fiber point nearest y0.
/// Throws TraceFailure (CriticalPointOnPath, NoProgress, AmbiguousMatch).
template <class R>
TraceLog<R> trace_curve(const CurveAnalysis<R>& curve, const ParamPath<R>& path, const Complex<R>& y0,
                        const TraceOptions& opts = {});

template <class R>
TraceLog<R> trace_curve(const BivPoly<R>& f, const ParamPath<R>& path, const Complex<R>& y0,
                        const TraceOptions& opts = {});

/// Index of the root nearest to y; throws AmbiguousMatch when the runner-up
/// is as close within `ambiguity_tol`.
template <class R>
std::size_t match_nearest(const RootSet<R>& fiber, const Complex<R>& y, double ambiguity_tol);

}  // namespace certpath
