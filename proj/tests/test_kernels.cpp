#include "doctest.h"

#include <algorithm>
#include <numeric>

#include "certpath/fixtures.hpp"
#include "certpath/kernels.hpp"
#include "certpath/rootfinder.hpp"
#include "test_util.hpp"

using namespace certpath;
using testutil::cd;

namespace {

/// Bottleneck value by enumerating every pairing.
double brute_bottleneck(const std::vector<cd>& a, const std::vector<cd>& b) {
    std::vector<std::size_t> perm(b.size());
    std::iota(perm.begin(), perm.end(), 0);
    double best = std::numeric_limits<double>::infinity();
    do {
        double worst = 0;
        for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, std::abs(a[i] - b[perm[i]]));
        best = std::min(best, worst);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return best;
}

}  // namespace

TEST_CASE("determinants") {
    CHECK(kernels::determinant<double>({1, 2, 3, 4}, 2) == cd(-2));
    CHECK(kernels::determinant<double>({0, 1, 1, 0}, 2) == cd(-1));
    for (int t = 0; t < 50; ++t) {
        const std::size_t n = static_cast<std::size_t>(testutil::uniform_int(1, 7));
        std::vector<cd> a(n * n);
        std::vector<std::complex<long double>> al(n * n);
        for (std::size_t i = 0; i < n * n; ++i) {
            a[i] = testutil::disc(2);
            al[i] = {a[i].real(), a[i].imag()};
        }
        const auto o = testutil::det_ld(al, n);
        const cd oracle(static_cast<double>(o.real()), static_cast<double>(o.imag()));
        CHECK(std::abs(kernels::determinant<double>(a, n) - oracle) < 1e-11 * std::max(1.0, std::abs(oracle)));
    }
}

TEST_CASE("Sylvester matrix layout") {
    // f = y - x, g = y + x at x = 3: rows [1, -3] and [1, 3].
    const BivPoly<double> f({UniPoly<double>::exact({0, -1}), UniPoly<double>::exact({1})});
    const BivPoly<double> g({UniPoly<double>::exact({0, 1}), UniPoly<double>::exact({1})});
    const auto m = kernels::sylvester_matrix<double>(f, g, cd(3));
    REQUIRE(m.size() == 4);
    CHECK(m[0] == cd(1));
    CHECK(m[1] == cd(-3));
    CHECK(m[2] == cd(1));
    CHECK(m[3] == cd(3));
}

TEST_CASE("bottleneck displacement") {
    const std::vector<cd> a{0, 1}, b{cd(1.1), cd(0.1)};
    CHECK(kernels::bottleneck_displacement<double>(a, b) == doctest::Approx(0.1));
    // Greedy nearest pairing would give 2 here, the optimum is 1.
    const std::vector<cd> c{0, 2}, d{1, 3};
    CHECK(kernels::bottleneck_displacement<double>(c, d) == doctest::Approx(1.0));
    for (int t = 0; t < 100; ++t) {
        const int n = testutil::uniform_int(1, 6);
        std::vector<cd> u, v;
        for (int k = 0; k < n; ++k) {
            u.push_back(testutil::disc(2));
            v.push_back(testutil::disc(2));
        }
        CHECK(kernels::bottleneck_displacement<double>(u, v) == doctest::Approx(brute_bottleneck(u, v)).epsilon(1e-14));
    }
}

TEST_CASE("serial and parallel kernels agree bit for bit") {
    for (int t = 0; t < 10; ++t) {
        const auto f = testutil::random_biv(testutil::uniform_int(2, 5), testutil::uniform_int(1, 3));
        const cd x1 = testutil::disc(0.5);
        const auto base = fiber(f, x1, 1e-13);
        std::vector<cd> xs;
        for (int i = 0; i < 200; ++i) xs.push_back(x1 + testutil::disc(0.05));
        const auto s = kernels::serial::fiber_displacements<double>(f, base.roots, xs, 1e-13);
        const auto p = kernels::parallel::fiber_displacements<double>(f, base.roots, xs, 1e-13);
        REQUIRE(s.size() == xs.size());
        CHECK(s == p);
        for (std::size_t i = 0; i < xs.size(); i += 41) {
            const auto other = fiber(f, xs[i], 1e-13);
            CHECK(s[i] == doctest::Approx(kernels::bottleneck_displacement<double>(base.roots, other.roots)));
        }
        const auto g = testutil::random_biv(2, 2);
        const auto ds = kernels::serial::sylvester_determinants<double>(f, g, xs);
        const auto dp = kernels::sylvester_determinants<double>(f, g, xs, true);
        for (std::size_t i = 0; i < xs.size(); ++i) CHECK(ds[i].value == dp[i].value);
    }
}

TEST_CASE("extended precision uses the serial path") {
    set_mp_precision_bits(96);
    using C = Complex<MpReal>;
    const auto f = fixtures::sqrt_curve<MpReal>();
    const std::vector<C> base{C(1), C(-1)};
    const std::vector<C> xs{C(MpReal("1.21"))};
    const auto d = kernels::fiber_displacements<MpReal>(f, base, xs, MpReal("1e-25"), true);
    REQUIRE(d.size() == 1);
    CHECK(abs(d[0] - MpReal("0.1")) < MpReal("1e-20"));
}
