#pragma once

#include <optional>
#include <string>
#include <vector>

#include "certpath/continuation.hpp"

namespace certpath {

/// Chain p_k(x_{k-1}, x_k) = 0, k = 1..n, with x = x_{k-1} and y = x_k in
/// each BivPoly. x_0 moves along the segment from initial[0] to target.
template <class R>
struct ChainSystem {
    std::vector<BivPoly<R>> equations;
    std::vector<Complex<R>> initial;  // x_0(0) .. x_n(0)
    Complex<R> target;

    std::size_t size() const { return equations.size(); }
    /// Largest |p_k(x_{k-1}, x_k)| relative to the sum of |terms|.
    R residual(const std::vector<Complex<R>>& positions) const;
    /// Throws InvalidArgument unless n >= 1, sizes agree and the initial
    /// values satisfy every equation within `tol` (relative).
    void validate(double tol = 1e-8) const;
};

template <class R>
struct SystemRound {
    /// Time reached within the round (relative to the round's anchor).
    R T = R(1);
    /// Same time on the global homotopy parameter in [0, 1].
    R s = R(1);
    std::vector<Complex<R>> positions;     // x_0(T) .. x_n(T)
    std::vector<BoundReport<R>> reports;   // k = 1..n, at the anchor
    std::vector<R> epsilon_primes;         // eps'_0 .. eps'_n
    std::size_t halvings = 0;              // within this round
};

template <class R>
struct SystemTraceLog {
    std::vector<Complex<R>> initial;
    std::vector<SystemRound<R>> rounds;
    std::size_t halvings = 0;
    Outcome outcome = Outcome::Failure;
    std::string reason;

    std::size_t step_count() const { return rounds.size(); }
    const std::vector<Complex<R>>& final_positions() const { return rounds.empty() ? initial : rounds.back().positions; }
};

template <class R>
class SystemFailure : public Error {
public:
    SystemFailure(ErrorKind kind, const std::string& what, SystemTraceLog<R> log)
        : Error(kind, what), log_(std::move(log)) {}
    const SystemTraceLog<R>& log() const { return log_; }

private:
    SystemTraceLog<R> log_;
};

struct SystemOptions {
    double rho_fraction = 0.5;
    /// A pass is accepted when safety_factor * delta_k >= eps'_{k-1}.
    double safety_factor = 0.99;
    /// Padding in eps'_k: max(pad_abs, pad_rel * delta_k).
    double epsilon_pad_abs = 1e-12;
    double epsilon_pad_rel = 1e-9;
    std::size_t max_halvings = 60;
    std::size_t max_rounds = 100000;
    /// Use the alternative range estimate instead of the linear one.
    bool alternative_range = false;
    double single_root_epsilon = 1.0;
    double ambiguity_tol = 1e-12;
    /// Same meaning as TraceOptions::precision_margin.
    double precision_margin = 1e3;
};

/// Traces the chain with x_0 on its segment. Throws SystemFailure
/// (CriticalPointOnPath, NoProgress, AmbiguousMatch) with the partial log.
template <class R>
SystemTraceLog<R> trace_system(const ChainSystem<R>& sys, const SystemOptions& opts = {});

template <class R>
struct ResultantComparison {
    SystemTraceLog<R> system;
    BivPoly<R> eliminant;  // q(x_0, x_2)
    std::optional<TraceLog<R>> resultant;
    /// Set when the resultant trace failed; NoProgress means non-termination.
    std::optional<ErrorKind> resultant_failure;
    std::string resultant_reason;
    std::size_t resultant_partial_steps = 0;

    std::size_t system_steps() const { return system.step_count(); }
    bool resultant_terminated() const { return resultant.has_value(); }
};

/// Runs trace_system and, separately, trace_curve on Res_{x_1}(p_1, p_2)
/// along the same x_0 segment. Needs n = 2.
template <class R>
ResultantComparison<R> compare_with_resultant(const ChainSystem<R>& sys, const SystemOptions& sopts = {},
                                              const TraceOptions& topts = {});

}  // namespace certpath
