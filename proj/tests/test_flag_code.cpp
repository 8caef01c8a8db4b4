#include <set>
#include <sstream>
#include <vector>

#include <catch2/catch_amalgamated.hpp>

#include "flagcodes/flag_code.hpp"
#include "flagcodes/flags.hpp"
#include "flagcodes/mrd.hpp"
#include "flagcodes/rng.hpp"

#include "enum_util.hpp"
#include "test_util.hpp"

using namespace flagcodes;

namespace {

FieldMatrix unit_entry(const FieldPtr& field, std::size_t n, std::size_t i, std::size_t j) {
    auto g = FieldMatrix::identity(field, n);
    g.at(i, j) = 1;
    return g;
}

FlagType random_type(Rng& rng, std::size_t n) {
    std::vector<std::size_t> dims;
    while (dims.empty())
        for (std::size_t d = 1; d < n; ++d)
            if (rng.below(2)) dims.push_back(d);
    return FlagType(n, dims);
}

FieldMatrix random_in_pattern(Rng& rng, const FieldPtr& field, const FlagType& type) {
    const auto& dims = type.dims();
    const std::size_t n = type.ambient();
    auto block_of = [&](std::size_t r) {
        for (std::size_t i = 0; i < dims.size(); ++i)
            if (r < dims[i]) return i;
        return dims.size();
    };
    auto g = FieldMatrix::identity(field, n);
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c)
            if (block_of(r) < block_of(c))
                g.at(r, c) = static_cast<std::uint32_t>(rng.below(field->q()));
    return g;
}

}  // namespace

TEST_CASE("rank sum distance of elementary moves", "[flagcode]") {
    auto field = Field::of_order(2);
    const std::size_t n = 5;
    auto type = FlagType::full(n);
    auto base = standard_flag(field, type);
    REQUIRE(ebar(FieldMatrix::identity(field, n), type) == 0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            auto g = unit_entry(field, n, i, j);
            REQUIRE(ebar(g, type) == j - i);
            REQUIRE(grassmann_distance(base, base.apply(g)) == j - i);
        }
}

TEST_CASE("rank sum matches the flag distance on random samples", "[flagcode]") {
    Rng rng(20240517);
    for (std::uint64_t q : {2ull, 3ull}) {
        auto field = Field::of_order(q);
        for (std::size_t trial = 0; trial < 100; ++trial) {
            const std::size_t n = 2 + rng.below(5);
            auto type = random_type(rng, n);
            auto g = random_in_pattern(rng, field, type);
            auto base = standard_flag(field, type);
            REQUIRE(ebar(g, type) == grassmann_distance(base, base.apply(g)));
        }
    }
}

TEST_CASE("rank sum rejects matrices outside the pattern", "[flagcode]") {
    auto field = Field::of_order(2);
    auto type = FlagType(4, {2});
    auto lower = unit_entry(field, 4, 3, 0);
    REQUIRE_THROWS_MATCHES(ebar(lower, type), Error, ErrcMatcher(Errc::ShapeMismatch));
    auto in_block = unit_entry(field, 4, 0, 1);  // off-diagonal inside a block
    REQUIRE_THROWS_MATCHES(ebar(in_block, type), Error, ErrcMatcher(Errc::ShapeMismatch));
    REQUIRE_THROWS_MATCHES(ebar(FieldMatrix::identity(field, 3), type), Error,
                           ErrcMatcher(Errc::ShapeMismatch));
    REQUIRE(ebar(unit_entry(field, 4, 1, 2), type) == 1);
}

TEST_CASE("lifted code of a square matrix code", "[flagcode]") {
    auto code = code_lifted(mrd_field_rep(2, 2), 4);
    REQUIRE(code.type() == FlagType(4, {2}));
    REQUIRE(code.construction() == "lifted");
    REQUIRE(code.dim() == 2);
    REQUIRE(code.size() == 4);
    REQUIRE(code.designed_distance() == 2);

    // distance oracle: dim(U ∩ W) via independent elimination, and the
    // single-member distance is 2 - meet
    const auto& flags = code.codebook();
    std::size_t best = SIZE_MAX;
    for (std::size_t i = 0; i < flags.size(); ++i)
        for (std::size_t j = i + 1; j < flags.size(); ++j) {
            testutil::Mat a, b;
            for (std::size_t r = 0; r < 2; ++r) {
                testutil::Row ra, rb;
                for (std::size_t c = 0; c < 4; ++c) {
                    ra.push_back(flags[i].member(0).basis().at(r, c));
                    rb.push_back(flags[j].member(0).basis().at(r, c));
                }
                a.push_back(ra);
                b.push_back(rb);
            }
            best = std::min(best, 2 - testutil::mod_meet_dim(a, b, 2));
        }
    REQUIRE(best == 2);
    REQUIRE(code_min_distance(code, DistanceMode::pairwise) == 2);
    REQUIRE(code_min_distance(code, DistanceMode::group) == 2);
}

TEST_CASE("lifted code from padded rectangular codewords", "[flagcode]") {
    auto code = code_lifted(mrd_pad_columns(mrd_gabidulin(2, 2, 2, 1), 3), 5);
    REQUIRE(code.type() == FlagType(5, {2}));
    REQUIRE(code.size() == 4);
    REQUIRE(code.designed_distance() == 2);
    REQUIRE(code_min_distance(code, DistanceMode::pairwise) == 2);
    REQUIRE(code_min_distance(code, DistanceMode::group) == 2);
}

TEST_CASE("lifted zero code is a single flag", "[flagcode]") {
    MrdCode zero(Field::of_order(2), 2, 2, 0, "zero", {});
    auto code = code_lifted(zero, 4);
    REQUIRE(code.size() == 1);
    REQUIRE(!code.designed_distance().has_value());
    REQUIRE(code.codebook()[0] == standard_flag(code.field(), FlagType(4, {2})));
    REQUIRE_THROWS_MATCHES(code_min_distance(code, DistanceMode::pairwise), Error,
                           ErrcMatcher(Errc::EmptyDistance));
    REQUIRE_THROWS_MATCHES(code_min_distance(code, DistanceMode::group), Error,
                           ErrcMatcher(Errc::EmptyDistance));
}

TEST_CASE("lifted code shape errors", "[flagcode]") {
    REQUIRE_THROWS_MATCHES(code_lifted(mrd_field_rep(2, 2), 5), Error,
                           ErrcMatcher(Errc::ShapeMismatch));
}

TEST_CASE("sandwich code m=1", "[flagcode]") {
    for (std::uint64_t q : {2ull, 3ull}) {
        auto code = code_sandwich(1, mrd_field_rep(q, 1), mrd_field_rep(q, 2));
        REQUIRE(code.type() == FlagType(4, {1, 2, 3}));
        REQUIRE(code.construction() == "sandwich");
        REQUIRE(code.dim() == 3);
        REQUIRE(code.size() == q * q * q);
        REQUIRE(code.designed_distance() == 2);
        REQUIRE(code_min_distance(code, DistanceMode::pairwise) == 2);
        REQUIRE(code_min_distance(code, DistanceMode::group) == 2);
    }
}

TEST_CASE("sandwich generator quotients keep the nested shape", "[flagcode]") {
    auto code = code_sandwich(1, mrd_field_rep(2, 1), mrd_field_rep(2, 2));
    const auto& gens = code.generators();
    bool closed = true;
    std::set<FieldMatrix> members(gens.begin(), gens.end());
    for (const auto& a : gens)
        for (const auto& b : gens) {
            auto p = a * inverse(b);
            if (!members.count(p)) closed = false;
            // quotient is again [[S, *], [0, S]] with S determined by the
            // difference of the inner codewords
            REQUIRE(in_block_pattern(p, code.type()));
            REQUIRE(p.at(0, 1) == p.at(2, 3));
            std::uint32_t diff = code.field()->sub(a.at(0, 1), b.at(0, 1));
            REQUIRE(p.at(0, 1) == diff);
        }
    REQUIRE(!closed);
}

TEST_CASE("sandwich parameter errors", "[flagcode]") {
    REQUIRE_THROWS_MATCHES(code_sandwich(1, mrd_field_rep(2, 2), mrd_field_rep(2, 2)), Error,
                           ErrcMatcher(Errc::ParameterMismatch));
    REQUIRE_THROWS_MATCHES(code_sandwich(1, mrd_field_rep(2, 1), mrd_gabidulin(2, 2, 2, 2)),
                           Error, ErrcMatcher(Errc::ParameterMismatch));
    REQUIRE_THROWS_MATCHES(code_sandwich(0, mrd_field_rep(2, 1), mrd_field_rep(2, 2)), Error,
                           ErrcMatcher(Errc::ParameterOutOfRange));
    REQUIRE_THROWS_MATCHES(code_sandwich(1, mrd_field_rep(2, 1), mrd_field_rep(3, 2)), Error,
                           ErrcMatcher(Errc::FieldMismatch));
}

TEST_CASE("checkerboard codes", "[flagcode]") {
    auto level0 = code_checkerboard({mrd_field_rep(2, 1)});
    REQUIRE(level0.type() == FlagType::full(2));
    REQUIRE(level0.dim() == 1);
    REQUIRE(level0.size() == 2);
    REQUIRE(level0.designed_distance() == 1);
    REQUIRE(code_min_distance(level0, DistanceMode::pairwise) == 1);
    REQUIRE(code_min_distance(level0, DistanceMode::group) == 1);

    auto level1 = code_checkerboard({mrd_field_rep(2, 1), mrd_field_rep(2, 2)});
    REQUIRE(level1.type() == FlagType::full(4));
    REQUIRE(level1.dim() == 3);
    REQUIRE(level1.size() == 8);
    REQUIRE(level1.designed_distance() == 2);
    REQUIRE(code_min_distance(level1, DistanceMode::pairwise) == 2);
    REQUIRE(code_min_distance(level1, DistanceMode::group) == 2);

    auto level1q3 = code_checkerboard({mrd_field_rep(3, 1), mrd_field_rep(3, 2)});
    REQUIRE(level1q3.size() == 27);
    REQUIRE(code_min_distance(level1q3, DistanceMode::pairwise) == 2);
    REQUIRE(code_min_distance(level1q3, DistanceMode::group) == 2);
}

TEST_CASE("checkerboard level two", "[flagcode]") {
    auto rep1 = mrd_field_rep(2, 1);
    auto rep2 = mrd_field_rep(2, 2);
    auto rep4 = mrd_field_rep(2, 4);
    auto code = code_checkerboard({rep1, rep2, rep4});
    REQUIRE(code.type() == FlagType::full(8));
    REQUIRE(code.dim() == 7);
    REQUIRE(code.size() == 128);
    REQUIRE(code.designed_distance() == 4);

    // generators nest: diagonal quarters repeat a level-one generator and
    // the upper-right quarter runs over the big code, inner index fastest
    auto level1 = code_checkerboard({rep1, rep2});
    auto quarter_words = rep4.codewords();
    const auto& gens = code.generators();
    for (std::size_t i = 0; i < level1.size(); ++i)
        for (std::size_t j = 0; j < quarter_words.size(); ++j) {
            const auto& g = gens[i * quarter_words.size() + j];
            REQUIRE(g.block(0, 4, 0, 4) == level1.generators()[i]);
            REQUIRE(g.block(4, 8, 4, 8) == level1.generators()[i]);
            REQUIRE(g.block(0, 4, 4, 8) == quarter_words[j]);
        }

    REQUIRE(code_min_distance(code, DistanceMode::pairwise) == 4);
    REQUIRE(code_min_distance(code, DistanceMode::group) == 4);
}

TEST_CASE("checkerboard parameter errors", "[flagcode]") {
    REQUIRE_THROWS_MATCHES(code_checkerboard({}), Error, ErrcMatcher(Errc::ParameterMismatch));
    REQUIRE_THROWS_MATCHES(code_checkerboard({mrd_field_rep(2, 2)}), Error,
                           ErrcMatcher(Errc::ParameterMismatch));
    REQUIRE_THROWS_MATCHES(code_checkerboard({mrd_field_rep(2, 1), mrd_field_rep(3, 2)}), Error,
                           ErrcMatcher(Errc::FieldMismatch));
}

TEST_CASE("derived band codes", "[flagcode]") {
    struct Params {
        std::size_t n, k;
        std::size_t dim, dist;
    };
    for (auto [n, k, dim, dist] :
         {Params{4, 1, 3, 2}, Params{5, 1, 6, 2}, Params{5, 2, 3, 3}, Params{6, 2, 6, 3}}) {
        INFO("n=" << n << " k=" << k);
        auto code = code_derived(n, k, 2);
        REQUIRE(code.type() == FlagType::full(n));
        REQUIRE(code.construction() == "derived");
        REQUIRE(code.dim() == dim);
        REQUIRE(code.designed_distance() == dist);
        REQUIRE(code.size() == (1ull << dim));
        REQUIRE(code_min_distance(code, DistanceMode::pairwise) == dist);
        REQUIRE(code_min_distance(code, DistanceMode::group) == dist);
    }
    auto q3 = code_derived(4, 2, 3);
    REQUIRE(q3.size() == 3);
    REQUIRE(code_min_distance(q3, DistanceMode::pairwise) == 3);
    REQUIRE(code_min_distance(q3, DistanceMode::group) == 3);
}

TEST_CASE("derived band generators form a group", "[flagcode]") {
    auto code = code_derived(5, 1, 2);
    std::set<FieldMatrix> members(code.generators().begin(), code.generators().end());
    REQUIRE(members.size() == code.size());
    for (const auto& a : members) {
        REQUIRE(members.count(inverse(a)) == 1);
        for (const auto& b : members) REQUIRE(members.count(a * b) == 1);
    }
}

TEST_CASE("derived band edge cases", "[flagcode]") {
    auto widest = code_derived(3, 0, 2);
    REQUIRE(widest.dim() == 3);
    REQUIRE(widest.size() == 8);
    REQUIRE(code_min_distance(widest, DistanceMode::group) == 1);

    auto single = code_derived(4, 3, 2);
    REQUIRE(single.dim() == 0);
    REQUIRE(single.size() == 1);
    REQUIRE(single.codebook()[0] == standard_flag(single.field(), FlagType::full(4)));
    REQUIRE_THROWS_MATCHES(code_min_distance(single, DistanceMode::group), Error,
                           ErrcMatcher(Errc::EmptyDistance));

    REQUIRE_THROWS_MATCHES(code_derived(4, 4, 2), Error,
                           ErrcMatcher(Errc::ParameterOutOfRange));
    REQUIRE_THROWS_MATCHES(code_derived(1, 0, 2), Error,
                           ErrcMatcher(Errc::ParameterOutOfRange));
    REQUIRE_THROWS_MATCHES(code_derived(8, 0, 3), Error, ErrcMatcher(Errc::TooLarge));
}

TEST_CASE("group mode rejects generators outside the pattern", "[flagcode]") {
    auto field = Field::of_order(2);
    auto id = FieldMatrix::identity(field, 2);
    auto swapped = FieldMatrix(field, 2, 2);
    swapped.at(0, 0) = 1;
    swapped.at(0, 1) = 1;
    swapped.at(1, 0) = 1;
    FlagCode code(field, FlagType(2, {1}), "manual", 1, std::nullopt, {id, swapped});
    REQUIRE(code_min_distance(code, DistanceMode::pairwise) == 1);
    REQUIRE_THROWS_MATCHES(code_min_distance(code, DistanceMode::group), Error,
                           ErrcMatcher(Errc::NotAGroup));
}

TEST_CASE("flag code file round trip", "[flagcode]") {
    auto code = code_sandwich(1, mrd_field_rep(2, 1), mrd_field_rep(2, 2));
    auto text = flag_code_to_string(code);
    REQUIRE(text.rfind("flagcode v1 q=2 n=4 T=1,2,3 construction=sandwich dim=3\n", 0) == 0);
    auto loaded = flag_code_from_string(text);
    REQUIRE(loaded.type() == code.type());
    REQUIRE(loaded.construction() == code.construction());
    REQUIRE(loaded.dim() == code.dim());
    REQUIRE(!loaded.designed_distance().has_value());
    REQUIRE(loaded.generators() == code.generators());
    REQUIRE(loaded.codebook() == code.codebook());
    REQUIRE(flag_code_to_string(loaded) == text);
    REQUIRE(code_min_distance(loaded, DistanceMode::group) == 2);

    auto again = flag_code_from_string(text, code.field());
    REQUIRE(again.generators() == code.generators());
    REQUIRE_THROWS_MATCHES(flag_code_from_string(text, Field::of_order(3)), Error,
                           ErrcMatcher(Errc::ParameterMismatch));
}

TEST_CASE("flag code parse errors", "[flagcode]") {
    REQUIRE_THROWS_MATCHES(flag_code_from_string("subspace v1 q=2\n"), Error,
                           ErrcMatcher(Errc::ParseError));
    REQUIRE_THROWS_MATCHES(flag_code_from_string("flagcode v1 q=2 n=4 T=1,2,3\n"), Error,
                           ErrcMatcher(Errc::ParseError));
    REQUIRE_THROWS_MATCHES(
        flag_code_from_string("flagcode v1 q=2 n=4 T=3,2 construction=x dim=1\n"), Error,
        ErrcMatcher(Errc::ParseError));
    REQUIRE_THROWS_MATCHES(
        flag_code_from_string("flagcode v1 q=2 n=4 T=1,2 construction=x dim=20\n"), Error,
        ErrcMatcher(Errc::TooLarge));
    // generator with the wrong shape
    REQUIRE_THROWS_MATCHES(
        flag_code_from_string("flagcode v1 q=2 n=2 T=1 construction=x dim=0\n1 2 2\n1 0\n"),
        Error, ErrcMatcher(Errc::ParseError));
    // truncated codeword list
    REQUIRE_THROWS_MATCHES(
        flag_code_from_string(
            "flagcode v1 q=2 n=2 T=1 construction=x dim=1\n2 2 2\n1 0\n0 1\n"),
        Error, ErrcMatcher(Errc::ParseError));
}
