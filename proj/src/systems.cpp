#include "certpath/systems.hpp"

#include <algorithm>

namespace certpath {

namespace {

template <class R>
R relative_residual(const BivPoly<R>& p, const Complex<R>& x, const Complex<R>& y) {
    R scale(0);
    R py(1);
    for (const auto& a : p.y_coeffs()) {
        R ax(0);
        R px(1);
        for (const auto& c : a.coeffs()) {
            ax += magnitude(c) * px;
            px *= magnitude(x);
        }
        scale += ax * py;
        py *= magnitude(y);
    }
    return magnitude(p(x, y)) / std::max(scale, R(1e-300));
}

}  // namespace

template <class R>
R ChainSystem<R>::residual(const std::vector<Complex<R>>& positions) const {
    R worst(0);
    for (std::size_t k = 0; k < equations.size(); ++k)
        worst = std::max(worst, relative_residual(equations[k], positions[k], positions[k + 1]));
    return worst;
}

template <class R>
void ChainSystem<R>::validate(double tol) const {
    if (equations.empty()) throw Error(ErrorKind::InvalidArgument, "chain needs at least one equation");
    if (initial.size() != equations.size() + 1)
        throw Error(ErrorKind::InvalidArgument, "chain of " + std::to_string(equations.size()) + " equations needs " +
                                                    std::to_string(equations.size() + 1) + " initial values");
    for (std::size_t k = 0; k < equations.size(); ++k) {
        if (equations[k].deg_y() < 1)
            throw Error(ErrorKind::InvalidArgument, "equation " + std::to_string(k + 1) + " does not involve x_" +
                                                        std::to_string(k + 1));
        if (relative_residual(equations[k], initial[k], initial[k + 1]) > R(tol))
            throw Error(ErrorKind::InvalidArgument,
                        "initial values do not satisfy equation " + std::to_string(k + 1));
    }
}

template <class R>
SystemTraceLog<R> trace_system(const ChainSystem<R>& sys, const SystemOptions& opts) {
    sys.validate();
    if (!(opts.safety_factor > 0.0 && opts.safety_factor <= 1.0))
        throw Error(ErrorKind::InvalidArgument, "safety_factor must lie in (0, 1]");
    const std::size_t n = sys.size();

    SystemTraceLog<R> log;
    log.initial = sys.initial;
    auto failure = [&](ErrorKind kind, const std::string& msg) {
        log.outcome = Outcome::Failure;
        log.reason = msg;
        return SystemFailure<R>(kind, msg, log);
    };

    std::vector<CurveAnalysis<R>> curves;
    curves.reserve(n);
    for (const auto& p : sys.equations) {
        try {
            curves.push_back(CurveAnalysis<R>::analyze(p));
        } catch (const Error& e) {
            throw failure(e.kind(), e.what());
        }
    }

    std::vector<Complex<R>> anchor = sys.initial;
    R s0(0);
    while (true) {
        if (log.rounds.size() >= opts.max_rounds) throw failure(ErrorKind::NoProgress, "round budget exhausted");
        const Complex<R> x0_start = anchor[0];
        SystemRound<R> round;
        R T(1);
        bool accepted = false;
        while (!accepted) {
            const Complex<R> x0_T = (R(1) - T) * x0_start + T * sys.target;
            std::vector<Complex<R>> pos(n + 1);
            pos[0] = x0_T;
            std::vector<R> eps_prime(n + 1);
            eps_prime[0] = magnitude(x0_start - x0_T);
            std::vector<BoundReport<R>> reports;
            accepted = true;
            for (std::size_t k = 1; k <= n; ++k) {
                const CurveAnalysis<R>& curve = curves[k - 1];
                BoundReport<R> rep;
                try {
                    RootSet<R> fib = fiber(curve.f, anchor[k - 1], curve.root_tol);
                    const R eps_k = fib.size() >= 2 ? min_pairwise_distance(fib) / R(2) : R(opts.single_root_epsilon);
                    if (!(eps_k > R(0))) throw Error(ErrorKind::CriticalFiber, "coincident fiber roots");
                    rep = compute_delta(curve, anchor[k - 1], eps_k, opts.rho_fraction, std::move(fib));
                } catch (const Error& e) {
                    throw failure(ErrorKind::CriticalPointOnPath, "bound unavailable for equation " +
                                                                      std::to_string(k) + " at the anchor (" +
                                                                      e.what() + ")");
                }
                if (!(rep.epsilon >= R(opts.precision_margin) * fiber_error_estimate(curve, anchor[k - 1], rep.fiber)))
                    throw failure(ErrorKind::NoProgress, "fiber of equation " + std::to_string(k) +
                                                             " not resolved at working precision at s = " +
                                                             to_decimal(s0));
                if (R(opts.safety_factor) * rep.delta < eps_prime[k - 1]) {
                    T /= R(2);
                    ++round.halvings;
                    ++log.halvings;
                    if (round.halvings > opts.max_halvings)
                        throw failure(ErrorKind::NoProgress, "more than " + std::to_string(opts.max_halvings) +
                                                                 " halvings in one round at s = " + to_decimal(s0));
                    accepted = false;
                    break;
                }
                try {
                    const RootSet<R> next = fiber(curve.f, pos[k - 1], curve.root_tol);
                    pos[k] = next.roots[match_nearest(next, anchor[k], opts.ambiguity_tol)];
                } catch (const Error& e) {
                    const ErrorKind kind = e.kind() == ErrorKind::AmbiguousMatch ? ErrorKind::AmbiguousMatch
                                                                                 : ErrorKind::CriticalPointOnPath;
                    throw failure(kind, std::string("matching x_") + std::to_string(k) + ": " + e.what());
                }
                const R delta_prime = magnitude(anchor[k - 1] - pos[k - 1]);
                const R pad = std::max(R(opts.epsilon_pad_abs), R(opts.epsilon_pad_rel) * rep.delta);
                eps_prime[k] = opts.alternative_range && delta_prime + pad < rep.rho
                                   ? refine_epsilon_alt(rep, R(delta_prime + pad))
                                   : R((delta_prime + pad) / rep.delta * rep.epsilon);
                reports.push_back(std::move(rep));
            }
            if (accepted) {
                round.T = T;
                round.s = s0 + T * (R(1) - s0);
                round.positions = std::move(pos);
                round.reports = std::move(reports);
                round.epsilon_primes = std::move(eps_prime);
            }
        }
        anchor = round.positions;
        s0 = round.s;
        const bool done = round.T == R(1);
        log.rounds.push_back(std::move(round));
        if (done) break;
    }
    log.outcome = Outcome::Success;
    return log;
}

template <class R>
ResultantComparison<R> compare_with_resultant(const ChainSystem<R>& sys, const SystemOptions& sopts,
                                              const TraceOptions& topts) {
    if (sys.size() != 2) throw Error(ErrorKind::InvalidArgument, "resultant comparison needs a chain of two equations");
    ResultantComparison<R> out;
    out.system = trace_system(sys, sopts);
    out.eliminant = eliminate_shared(sys.equations[0], sys.equations[1]);
    const ParamPath<R> path = ParamPath<R>::segment(sys.initial[0], sys.target);
    try {
        out.resultant = trace_curve(out.eliminant, path, sys.initial[2], topts);
    } catch (const TraceFailure<R>& e) {
        out.resultant_failure = e.kind();
        out.resultant_reason = e.what();
        out.resultant_partial_steps = e.log().step_count();
    }
    return out;
}

#define CERTPATH_INSTANTIATE_SYSTEMS(R)                                                   \
    template struct ChainSystem<R>;                                                       \
    template SystemTraceLog<R> trace_system(const ChainSystem<R>&, const SystemOptions&); \
    template ResultantComparison<R> compare_with_resultant(const ChainSystem<R>&, const SystemOptions&, \
                                                           const TraceOptions&);

CERTPATH_INSTANTIATE_SYSTEMS(double)
CERTPATH_INSTANTIATE_SYSTEMS(MpReal)

}  // namespace certpath
