#include <catch2/catch_amalgamated.hpp>

#include <set>
#include <sstream>
#include <vector>

#include "flagcodes/matrix.hpp"

using namespace flagcodes;

namespace {

bool has_code(const Error& e, Errc c) { return e.code() == c; }

// Independent row-space membership: v is in the row space of m iff
// appending v does not raise the rank.
bool in_row_space(const FieldMatrix& m, const FieldMatrix& v) {
    return rank(m.vstack(v)) == rank(m);
}

bool same_row_space(const FieldMatrix& a, const FieldMatrix& b) {
    for (std::size_t i = 0; i < a.rows(); ++i)
        if (!in_row_space(b, a.row(i))) return false;
    for (std::size_t i = 0; i < b.rows(); ++i)
        if (!in_row_space(a, b.row(i))) return false;
    return true;
}

}  // namespace

TEST_CASE("rref hand-checked cases", "[matrix]") {
    auto gf2 = Field::prime(2);

    auto id3 = FieldMatrix::identity(gf2, 3);
    auto r1 = rref(id3);
    CHECK(r1.reduced == id3);
    CHECK(r1.rank == 3);
    CHECK(r1.pivot_columns == std::vector<std::size_t>{0, 1, 2});

    auto m = FieldMatrix::from_rows(gf2, 2, 3, {1, 1, 0, 1, 1, 1});
    auto r2 = rref(m);
    CHECK(r2.rank == 2);
    CHECK(r2.pivot_columns == std::vector<std::size_t>{0, 2});
    CHECK(r2.reduced == FieldMatrix::from_rows(gf2, 2, 3, {1, 1, 0, 0, 0, 1}));

    auto z = FieldMatrix(gf2, 2, 4);
    auto r3 = rref(z);
    CHECK(r3.reduced == z);
    CHECK(r3.rank == 0);
    CHECK(r3.pivot_columns.empty());
}

TEST_CASE("rref is idempotent and canonical on row spaces", "[matrix]") {
    for (std::uint64_t q : {2, 3, 4}) {
        auto f = Field::of_order(q);
        Rng rng(1000 + q);
        for (int t = 0; t < 100; ++t) {
            const std::size_t r = 1 + rng.below(4), c = 1 + rng.below(5);
            auto m = random_matrix(f, r, c, rng);
            auto red = rref(m);
            CHECK(rref(red.reduced).reduced == red.reduced);
            CHECK(same_row_space(m, red.reduced));

            // random row operations must not change the canonical form
            auto g = random_invertible(f, r, rng);
            CHECK(rref(g * m).reduced == red.reduced);
        }
    }
}

TEST_CASE("rank subadditivity", "[matrix]") {
    auto f = Field::prime(3);
    Rng rng(7);
    for (int t = 0; t < 200; ++t) {
        auto a = random_matrix(f, 3, 4, rng);
        auto b = random_matrix(f, 3, 4, rng);
        CHECK(rank(a + b) <= rank(a) + rank(b));
    }
}

TEST_CASE("inverse round-trips and rejects singular input", "[matrix]") {
    auto f = Field::of_order(4);
    Rng rng(99);
    for (int t = 0; t < 50; ++t) {
        auto m = random_invertible(f, 3, rng);
        CHECK(inverse(m) * m == FieldMatrix::identity(f, 3));
        CHECK(m * inverse(m) == FieldMatrix::identity(f, 3));
    }
    auto gf2 = Field::prime(2);
    auto sing = FieldMatrix::from_rows(gf2, 2, 2, {1, 1, 1, 1});
    CHECK_THROWS_MATCHES(inverse(sing), Error, Catch::Matchers::Predicate<Error>([](const Error& e) {
                             return has_code(e, Errc::SingularMatrix);
                         }));
}

TEST_CASE("block-triangular inverse identity", "[matrix]") {
    // [[A,B],[0,A]]^-1 = [[A^-1, -A^-1 B A^-1], [0, A^-1]]
    auto f = Field::prime(3);
    Rng rng(31);
    for (int t = 0; t < 50; ++t) {
        auto a = random_invertible(f, 2, rng);
        auto b = random_matrix(f, 2, 2, rng);
        FieldMatrix m(f, 4, 4);
        m.set_block(0, 0, a);
        m.set_block(0, 2, b);
        m.set_block(2, 2, a);
        auto ainv = inverse(a);
        FieldMatrix expect(f, 4, 4);
        expect.set_block(0, 0, ainv);
        expect.set_block(0, 2, (ainv * b * ainv).negated());
        expect.set_block(2, 2, ainv);
        CHECK(inverse(m) == expect);
    }
}

TEST_CASE("block assembly and extraction", "[matrix]") {
    auto f = Field::prime(5);
    Rng rng(5);
    auto a = random_matrix(f, 2, 3, rng);
    auto b = random_matrix(f, 2, 2, rng);
    auto ab = a.hstack(b);
    CHECK(ab.block(0, 2, 0, 3) == a);
    CHECK(ab.block(0, 2, 3, 5) == b);
    auto c = random_matrix(f, 1, 5, rng);
    auto stacked = ab.vstack(c);
    CHECK(stacked.rows() == 3);
    CHECK(stacked.block(2, 3, 0, 5) == c);
    CHECK(stacked.transposed().transposed() == stacked);

    CHECK_THROWS_MATCHES(a.hstack(c), Error, Catch::Matchers::Predicate<Error>([](const Error& e) {
                             return has_code(e, Errc::ShapeMismatch);
                         }));
    CHECK_THROWS_MATCHES(a * b, Error, Catch::Matchers::Predicate<Error>([](const Error& e) {
                             return has_code(e, Errc::ShapeMismatch);
                         }));
}

TEST_CASE("matrix multiplication against identity and associativity", "[matrix]") {
    auto f = Field::of_order(9);
    Rng rng(8);
    auto m = random_matrix(f, 3, 3, rng);
    CHECK(m * FieldMatrix::identity(f, 3) == m);
    CHECK(FieldMatrix::identity(f, 3) * m == m);
    auto a = random_matrix(f, 2, 3, rng);
    auto b = random_matrix(f, 3, 4, rng);
    auto c = random_matrix(f, 4, 2, rng);
    CHECK((a * b) * c == a * (b * c));
}

TEST_CASE("matrix text format round-trips bit-exactly", "[matrix][io]") {
    auto f = Field::of_order(4);
    auto m = FieldMatrix::from_rows(f, 2, 3, {0, 1, 2, 3, 0, 1});
    const std::string expect = "2 3 4\n0 1 2\n3 0 1\n";
    CHECK(matrix_to_string(m) == expect);
    auto back = matrix_from_string(expect);
    CHECK(back == m);
    CHECK(matrix_to_string(back) == expect);

    CHECK_THROWS_MATCHES(matrix_from_string("2 2 2\n1 0\n1"), Error,
                         Catch::Matchers::Predicate<Error>(
                             [](const Error& e) { return has_code(e, Errc::ParseError); }));
    CHECK_THROWS_MATCHES(matrix_from_string("1 1 2\n5\n"), Error,
                         Catch::Matchers::Predicate<Error>(
                             [](const Error& e) { return has_code(e, Errc::ParseError); }));
    auto gf3 = Field::prime(3);
    CHECK_THROWS_MATCHES(matrix_from_string("1 1 2\n1\n", gf3), Error,
                         Catch::Matchers::Predicate<Error>(
                             [](const Error& e) { return has_code(e, Errc::ParameterMismatch); }));
}

TEST_CASE("regular representation of GF(4) over GF(2)", "[matrix][rep]") {
    auto gf4 = Field::make(2, 2);
    CHECK(regular_representation(gf4, 0).is_zero());
    CHECK(regular_representation(gf4, 1) == FieldMatrix::identity(Field::prime(2), 2));
    std::set<FieldMatrix> images;
    for (std::uint32_t a = 0; a < 4; ++a) {
        auto m = regular_representation(gf4, a);
        images.insert(m);
        if (a) CHECK(rank(m) == 2);
    }
    CHECK(images.size() == 4);  // injective
}

TEST_CASE("regular representation is linear and multiplicative", "[matrix][rep]") {
    std::vector<FieldPtr> exts = {Field::make(2, 2), Field::make(2, 3), Field::make(2, 4),
                                  Field::make(3, 2), Field::extension(Field::make(2, 2), 2)};
    for (const auto& ext : exts) {
        for (std::uint32_t a = 0; a < ext->q(); ++a)
            for (std::uint32_t b = 0; b < ext->q(); ++b) {
                auto ra = regular_representation(ext, a);
                auto rb = regular_representation(ext, b);
                CHECK(regular_representation(ext, ext->mul(a, b)) == ra * rb);
                CHECK(regular_representation(ext, ext->add(a, b)) == ra + rb);
            }
    }
}

TEST_CASE("regular representation with a custom basis", "[matrix][rep]") {
    auto gf8 = Field::make(2, 3);
    // basis t^2, t, 1 (reversed polynomial basis)
    std::vector<std::uint32_t> basis = {4, 2, 1};
    for (std::uint32_t a = 0; a < 8; ++a)
        for (std::uint32_t b = 0; b < 8; ++b) {
            auto ra = regular_representation(gf8, a, basis);
            auto rb = regular_representation(gf8, b, basis);
            CHECK(regular_representation(gf8, gf8->mul(a, b), basis) == ra * rb);
        }
    CHECK_THROWS_MATCHES(regular_representation(gf8, 1, std::vector<std::uint32_t>{1, 2, 3}),
                         Error, Catch::Matchers::Predicate<Error>([](const Error& e) {
                             return has_code(e, Errc::DependentBasis);
                         }));
}
