#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "dynlab/core.hpp"
#include "dynlab/shadowing.hpp"

namespace dynlab {

/// A finite chain of orbit segments x_1..x_k with gap n: d(f^n x_i, x_{i+1}) < delta,
/// plus x_k -> x_1 when closed.
struct SpecInstance {
    std::vector<PointId> sources;
    std::size_t n = 1;
    bool closed = false;
    std::size_t N = 1;
    Rational delta;
    Rational epsilon;
};

/// The tracing point and the distances d(f^j x, f^{j-in} x_{i+1}) for
/// in <= j < (i+1)n, row-major by segment.
struct SpecCertificate {
    PointId tracer = 0;
    std::vector<Rational> witnesses;
    bool periodic = false;  // f^{kn}(tracer) = tracer
};

/// Checks the gluing condition of an instance (including n >= N).
bool is_admissible(const FiniteSystem& sys, const SpecInstance& instance);

/// A tracer for one explicit chain; for closed chains the tracer is in Per_{kn}.
std::optional<SpecCertificate> trace_chain(const FiniteSystem& sys, const SpecInstance& instance);

bool verify_spec_certificate(const FiniteSystem& sys, const SpecInstance& instance,
                             const SpecCertificate& certificate);

/// Outcome of a specification check. The quantifier over gaps n >= N is
/// discharged on [N, gap_bound]: beyond max preperiod + cycle lcm the n-step
/// behaviour repeats with period cycle lcm.
struct SpecResult {
    bool holds = true;
    std::size_t gap_bound = 0;
    std::optional<std::size_t> failing_gap;
    std::vector<PointId> failing_chain;
    bool bound_too_small = false;
    std::size_t states_explored = 0;
};

/// Largest gap that has to be examined for chains with gap >= N.
std::size_t gap_bound(const FiniteSystem& sys, std::size_t N);

SpecResult local_weak_spec_holds(const FiniteSystem& sys, const Rational& epsilon, std::size_t N,
                                 const Rational& delta, const SearchOptions& options = {});

/// Closed chains of k <= k_bound segments, tracers in Per_{kn}. `gap_cap`
/// optionally truncates the gaps examined.
SpecResult local_spec_holds(const FiniteSystem& sys, const Rational& epsilon, std::size_t N,
                            const Rational& delta, std::size_t k_bound,
                            std::optional<std::size_t> gap_cap = std::nullopt,
                            const SearchOptions& options = {});

/// max d(f^i a, f^i b) over 0 <= i <= N and pairs with d(a,b) <= bound: the
/// smallest eta not admissible when errors stay at most `bound`.
Rational continuity_modulus(const FiniteSystem& sys, std::size_t N, const Rational& bound);

/// Largest grid delta_1 with N * eta(delta_1) < delta, where eta(delta_1) is the
/// continuity modulus for errors strictly below delta_1.
Rational derived_delta(const FiniteSystem& sys, std::size_t N, const Rational& delta);

/// y_i = x_{Ni} with its certification.
struct BlockedChain {
    Lasso blocks;
    std::size_t N = 1;
    Rational eta;  // continuity modulus at the lasso's largest step error
    /// Telescoping sums bounding d(f^N y_i, y_{i+1}), one per distinct block
    /// starting at `first_block`.
    std::int64_t first_block = 0;
    std::vector<Rational> telescoping;
    std::vector<Rational> errors;
};

/// Throws ModulusViolation when N * eta >= delta or a telescoping bound does
/// not stay below delta.
BlockedChain blockify(const FiniteSystem& sys, const Lasso& lasso, std::size_t N, const Rational& delta);

struct SpecShadowResult {
    PointId point = 0;
    Rational delta;
    BlockedChain chain;
    /// max over j of d(f^j x, f^{j-iN} y_i) + (j - iN) eta, which stays below epsilon.
    Rational triangle_bound;
};

/// Local weak specification at (epsilon/2, N, delta) turned into a shadowing
/// point for the original lasso, following the blocking argument.
SpecShadowResult spec_to_shadow_point(const FiniteSystem& sys, const Lasso& lasso, std::size_t N,
                                      const Rational& epsilon, const SearchOptions& options = {});

enum class SpecKind { weak, full };

/// Per grid epsilon: the smallest N in [1, N_max] admitting a delta, with the
/// largest such grid delta.
ModulusTable modulus_table_for_spec(const FiniteSystem& sys, SpecKind kind, std::size_t N_max,
                                    std::size_t k_bound, const SearchOptions& options = {});

/// The system with map f^n and the same metric.
FiniteSystem power_system(const FiniteSystem& sys, std::size_t n);

/// Finite-scale local limit specification for a chain of sources with gap n
/// whose cycle part is exact under f^n. Returns a tracer whose f^n-orbit
/// eventually coincides with the chain.
std::optional<PointId> limit_spec_check(const FiniteSystem& sys, const Lasso& sources, std::size_t n);

/// Two-sided version; the system must be invertible.
std::optional<PointId> two_sided_limit_spec_check(const FiniteSystem& sys, const Lasso& sources,
                                                  std::size_t n);

/// Local Lipschitz specification fit: smallest L such that every d <= d0 has
/// some N <= N_max with local weak specification at (L*d, N, d).
std::optional<LipschitzFit> lipschitz_spec_constants(const FiniteSystem& sys, std::size_t N_max,
                                                     const SearchOptions& options = {});

}  // namespace dynlab
