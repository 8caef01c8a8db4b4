#include <algorithm>
#include <set>
#include <vector>

#include "catch2/catch_amalgamated.hpp"
#include "enum_util.hpp"
#include "flagcodes/matrix.hpp"
#include "flagcodes/rng.hpp"
#include "flagcodes/subspace.hpp"
#include "test_util.hpp"

using namespace flagcodes;

namespace {

FieldMatrix from_raw(const FieldPtr& field, const testutil::Mat& raw, std::size_t n) {
    FieldMatrix m(field, raw.size(), n);
    for (std::size_t i = 0; i < raw.size(); ++i)
        for (std::size_t j = 0; j < n; ++j) m.at(i, j) = raw[i][j];
    return m;
}

testutil::Mat to_raw(const FieldMatrix& m) {
    testutil::Mat raw(m.rows(), testutil::Row(m.cols(), 0));
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) raw[i][j] = m.at(i, j);
    return raw;
}

std::set<testutil::Row> vector_set(const Subspace& s) {
    std::set<testutil::Row> out;
    auto vecs = testutil::mod_span(to_raw(s.basis()), s.ambient(), s.field().q());
    for (auto& v : vecs) out.insert(std::move(v));
    return out;
}

}  // namespace

TEST_CASE("canonical basis matches combinatorial echelon enumeration", "[subspace]") {
    for (std::uint32_t p : {2u, 3u}) {
        auto field = Field::prime(p);
        const std::size_t n = 4;
        std::size_t total = 1;  // the zero subspace
        for (std::size_t d = 1; d <= n; ++d) {
            auto mats = testutil::all_rref(p, d, n);
            REQUIRE(mats.size() == testutil::gaussian_binomial(p, n, d));
            total += mats.size();
            for (const auto& raw : mats) {
                auto s = Subspace::from_rows(from_raw(field, raw, n));
                REQUIRE(s.dim() == d);
                REQUIRE(to_raw(s.basis()) == raw);
            }
        }
        REQUIRE(total > 0);
    }
}

TEST_CASE("row operations do not change the canonical basis", "[subspace]") {
    Rng rng(2024);
    for (std::uint64_t q : {2ull, 3ull, 4ull}) {
        auto field = Field::of_order(q);
        for (int trial = 0; trial < 40; ++trial) {
            auto m = random_matrix(field, 3, 5, rng);
            auto s = Subspace::from_rows(m);
            auto shuffled = m;
            shuffled.swap_rows(0, 2);
            shuffled.add_scaled_row(1, 0, static_cast<std::uint32_t>(rng.below(q)));
            std::uint32_t c = 1 + static_cast<std::uint32_t>(rng.below(q - 1));
            shuffled.scale_row(2, c);
            REQUIRE(Subspace::from_rows(shuffled) == s);
            REQUIRE(s.dim() == rank(m));
        }
    }
}

TEST_CASE("sum and meet agree with exhaustive vector arithmetic", "[subspace]") {
    const std::uint32_t p = 2;
    const std::size_t n = 3;
    auto field = Field::prime(p);
    std::vector<Subspace> all;
    all.push_back(Subspace::zero(field, n));
    for (std::size_t d = 1; d <= n; ++d)
        for (const auto& raw : testutil::all_rref(p, d, n))
            all.push_back(Subspace::from_rows(from_raw(field, raw, n)));
    REQUIRE(all.size() == 16);

    for (const auto& u : all)
        for (const auto& w : all) {
            auto su = vector_set(u);
            auto sw = vector_set(w);
            std::set<testutil::Row> expect_meet;
            std::set_intersection(su.begin(), su.end(), sw.begin(), sw.end(),
                                  std::inserter(expect_meet, expect_meet.begin()));
            auto m = meet(u, w);
            REQUIRE(vector_set(m) == expect_meet);
            REQUIRE(m.dim() == meet_dim(u, w));

            auto s = sum(u, w);
            REQUIRE(s.contains(u));
            REQUIRE(s.contains(w));
            REQUIRE(s.dim() == u.dim() + w.dim() - m.dim());
            REQUIRE(u.contains(m));
            REQUIRE(w.contains(m));
        }
}

TEST_CASE("lattice identities over larger fields", "[subspace]") {
    Rng rng(77);
    for (std::uint64_t q : {3ull, 4ull}) {
        auto field = Field::of_order(q);
        const std::size_t n = 4;
        for (int trial = 0; trial < 25; ++trial) {
            auto u = Subspace::from_rows(random_matrix(field, 2, n, rng));
            auto w = Subspace::from_rows(random_matrix(field, 2, n, rng));
            auto x = Subspace::from_rows(random_matrix(field, 1, n, rng));
            REQUIRE(sum(u, w) == sum(w, u));
            REQUIRE(meet(u, w) == meet(w, u));
            REQUIRE(sum(u, u) == u);
            REQUIRE(meet(u, u) == u);
            REQUIRE(sum(sum(u, w), x) == sum(u, sum(w, x)));
            REQUIRE(meet(meet(u, w), x) == meet(u, meet(w, x)));
            REQUIRE(meet_dim(u, w) == meet(u, w).dim());
        }
    }
}

TEST_CASE("standard containment chain and membership", "[subspace]") {
    auto field = Field::prime(3);
    const std::size_t n = 4;
    auto zero = Subspace::zero(field, n);
    auto whole = Subspace::full(field, n);
    REQUIRE(zero.dim() == 0);
    REQUIRE(whole.dim() == n);
    for (std::size_t d = 0; d <= n; ++d) {
        auto s = Subspace::standard(field, n, d);
        REQUIRE(s.dim() == d);
        REQUIRE(whole.contains(s));
        REQUIRE(s.contains(zero));
        if (d > 0) REQUIRE(s.contains(Subspace::standard(field, n, d - 1)));
    }

    auto plane = Subspace::standard(field, n, 2);
    FieldMatrix v(field, 1, n);
    v.at(0, 0) = 1;
    v.at(0, 1) = 2;
    REQUIRE(plane.contains(v));
    v.at(0, 3) = 1;
    REQUIRE_FALSE(plane.contains(v));
    REQUIRE(plane.contains(FieldMatrix(field, 1, n)));
}

TEST_CASE("subspace error paths", "[subspace]") {
    auto f2 = Field::prime(2);
    auto f3 = Field::prime(3);
    auto a = Subspace::standard(f2, 3, 1);
    auto b = Subspace::standard(f2, 4, 1);
    auto c = Subspace::standard(f3, 3, 1);

    REQUIRE_THROWS_MATCHES(sum(a, b), Error, ErrcMatcher(Errc::AmbientMismatch));
    REQUIRE_THROWS_MATCHES(meet(a, b), Error, ErrcMatcher(Errc::AmbientMismatch));
    REQUIRE_THROWS_MATCHES(sum(a, c), Error, ErrcMatcher(Errc::FieldMismatch));
    REQUIRE_THROWS_MATCHES(a.contains(FieldMatrix(f2, 1, 4)), Error,
                           ErrcMatcher(Errc::ShapeMismatch));
    REQUIRE_THROWS_MATCHES(a.contains(FieldMatrix(f2, 2, 3)), Error,
                           ErrcMatcher(Errc::ShapeMismatch));
    REQUIRE_THROWS_MATCHES(Subspace::standard(f2, 3, 4), Error,
                           ErrcMatcher(Errc::ParameterOutOfRange));
}

TEST_CASE("apply transports subspaces and respects composition", "[subspace]") {
    Rng rng(5150);
    auto field = Field::of_order(4);
    const std::size_t n = 4;
    for (int trial = 0; trial < 20; ++trial) {
        auto s = Subspace::from_rows(random_matrix(field, 2, n, rng));
        auto g = random_invertible(field, n, rng);
        auto h = random_invertible(field, n, rng);
        REQUIRE(s.apply(g).apply(h) == s.apply(g * h));
        REQUIRE(s.apply(FieldMatrix::identity(field, n)) == s);
        REQUIRE(s.apply(g).dim() == s.dim());
    }
}
