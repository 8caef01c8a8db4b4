#pragma once

#include <chrono>
#include <cstdint>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "channel.hpp"
#include "errors.hpp"
#include "finite_field.hpp"
#include "flag_code.hpp"
#include "flags.hpp"
#include "matrix.hpp"
#include "mrd.hpp"
#include "permutation.hpp"
#include "rng.hpp"
#include "subspace.hpp"
#include "topology.hpp"

// Self-contained verification suites: exhaustive desk-scale checks of the
// library's central identities, runnable from the command line and reused
// by the acceptance harness. Each suite reports pass/fail, the number of
// individual checks, and the wall time.

namespace flagcodes::verify {

struct SuiteResult {
    std::string name;
    bool passed = true;
    std::size_t checks = 0;
    double seconds = 0.0;
    std::string detail;  // first failure, empty when passed
};

namespace detail {

class Checker {
  public:
    explicit Checker(SuiteResult& r) : r_(r) {}

    void operator()(bool ok, const char* what) {
        ++r_.checks;
        if (!ok && r_.passed) {
            r_.passed = false;
            r_.detail = what;
        }
    }

    template <typename F>
    void lazy(bool ok, F&& describe) {
        ++r_.checks;
        if (!ok && r_.passed) {
            r_.passed = false;
            r_.detail = describe();
        }
    }

  private:
    SuiteResult& r_;
};

inline const char* butterfly_text() {
    return "node s source\n"
           "node t1 internal\n"
           "node t2 internal\n"
           "node u internal\n"
           "node v internal\n"
           "node r1 receiver\n"
           "node r2 receiver\n"
           "edge s t1\n"
           "edge s t2\n"
           "edge t1 u\n"
           "edge t2 u\n"
           "edge t1 r1\n"
           "edge t2 r2\n"
           "edge u v\n"
           "edge v r1\n"
           "edge v r2\n";
}

inline std::vector<FlagType> all_types(std::size_t n) {
    std::vector<FlagType> types;
    for (std::size_t mask = 1; mask < (1u << (n - 1)); ++mask) {
        std::vector<std::size_t> dims;
        for (std::size_t d = 1; d < n; ++d)
            if (mask & (1u << (d - 1))) dims.push_back(d);
        types.emplace_back(n, dims);
    }
    return types;
}

inline FieldMatrix random_in_pattern(const FieldPtr& field, const FlagType& type, Rng& rng) {
    const std::size_t n = type.ambient();
    auto block_of = [&](std::size_t i) {
        std::size_t b = 0;
        for (auto d : type.dims())
            if (i >= d) ++b;
        return b;
    };
    auto g = FieldMatrix::identity(field, n);
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c)
            if (block_of(r) < block_of(c))
                g.at(r, c) = static_cast<std::uint32_t>(rng.below(field->q()));
    return g;
}

template <typename Body>
SuiteResult timed(const char* name, Body&& body) {
    SuiteResult r;
    r.name = name;
    const auto start = std::chrono::steady_clock::now();
    try {
        Checker check(r);
        body(check);
    } catch (const std::exception& e) {
        r.passed = false;
        if (r.detail.empty()) r.detail = e.what();
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return r;
}

}  // namespace detail

// Word-length identities across whole symmetric groups, n <= 7: the
// two-sided bound (l + l_tr)/2 <= depth <= l, the distance-sum identity
// s = 2*depth, depth 1 exactly at the adjacent transpositions, the exact
// maximum floor(n/2)*ceil(n/2), and the depth histogram against a direct
// recount.
inline SuiteResult suite_lesym() {
    return detail::timed("lesym", [](detail::Checker& check) {
        for (std::size_t n = 1; n <= 7; ++n) {
            std::size_t max_depth = 0;
            std::map<std::size_t, std::uint64_t> counted;
            for (const auto& p : all_permutations(n)) {
                const auto l = p.length();
                const auto ltr = p.transposition_length();
                const auto d = p.depth();
                check(l + ltr <= 2 * d, "depth fell below the half-sum bound");
                check(d <= l, "depth exceeded the inversion count");
                check(p.sum_of_distances() == 2 * d, "distance sum is not twice the depth");
                check((d == 1) == (l == 1), "depth one does not match length one");
                check(p.inverse().depth() == d, "depth changed under inversion");
                check(p.inverse().length() == l, "length changed under inversion");
                max_depth = std::max(max_depth, d);
                ++counted[d];
            }
            check(max_depth == (n / 2) * ((n + 1) / 2), "maximal depth is off");
            check(counted == depth_histogram(n), "histogram disagrees with the recount");
        }
        const auto t3 = depth_histogram(3);
        check(t3.at(0) == 1 && t3.at(1) == 2 && t3.at(2) == 3, "histogram row for n=3 is off");
        check(depth_histogram(4).at(4) == 4, "deepest class count for n=4 is off");
    });
}

// Apartment flags against permutation statistics, q in {2,3}: the
// subspace-meet distance equals depth and the gallery distance equals
// length (n <= 5); relative position of two apartment flags is the
// quotient permutation (n <= 4); on distinct pairs the two metrics obey
// d_G >= E > d_G/2.
inline SuiteResult suite_dE() {
    return detail::timed("dE", [](detail::Checker& check) {
        for (std::uint32_t q : {2u, 3u}) {
            auto field = Field::prime(q);
            for (std::size_t n = 2; n <= 5; ++n) {
                auto base = standard_flag(field, FlagType::full(n));
                std::vector<Permutation> perms = all_permutations(n);
                std::vector<Flag> apartment;
                for (const auto& p : perms) apartment.push_back(apartment_flag(field, p));
                for (std::size_t i = 0; i < perms.size(); ++i) {
                    check(grassmann_distance(base, apartment[i]) == perms[i].depth(),
                          "apartment flag distance is not the depth");
                    check(gallery_distance(base, apartment[i]) == perms[i].length(),
                          "gallery distance is not the length");
                }
                for (std::size_t i = 0; i < perms.size(); ++i)
                    for (std::size_t j = 0; j < perms.size(); ++j) {
                        if (n <= 4)
                            check(relative_position(apartment[i], apartment[j]) ==
                                      compose(perms[i].inverse(), perms[j]),
                                  "relative position is not the quotient permutation");
                        if (i == j) continue;
                        const auto e = grassmann_distance(apartment[i], apartment[j]);
                        const auto dg = gallery_distance(apartment[i], apartment[j]);
                        check(dg >= e, "gallery distance fell below the meet distance");
                        check(2 * e > dg, "meet distance fell to half the gallery distance");
                    }
            }
        }
    });
}

// Bruhat normal form on random invertible matrices over GF(2) and GF(3),
// 250 samples for each n in 2..5: the factors multiply back to the input
// and the permutation equals the relative position of the flag the matrix
// spans.
inline SuiteResult suite_bruhat() {
    return detail::timed("bruhat", [](detail::Checker& check) {
        for (std::uint32_t q : {2u, 3u}) {
            auto field = Field::prime(q);
            Rng rng(90210 + q);
            for (std::size_t n = 2; n <= 5; ++n) {
                auto base = standard_flag(field, FlagType::full(n));
                for (std::size_t trial = 0; trial < 250; ++trial) {
                    auto a = random_invertible(field, n, rng);
                    auto d = bruhat_decompose(a);
                    check(d.b * permutation_matrix(field, d.pi) * d.u == a,
                          "factors do not multiply back to the input");
                    check(relative_position(base, flag_from_matrix(a, FlagType::full(n))) ==
                              d.pi,
                          "permutation part is not the relative position");
                }
            }
        }
    });
}

// Circle cardinalities in GL(3): enumerating every full flag of K^3 and
// binning by relative position to the standard flag must give exactly
// q^length(pi) flags per permutation, and the bins must coincide with the
// direct circle enumeration.
inline SuiteResult suite_circles() {
    return detail::timed("circles", [](detail::Checker& check) {
        for (std::uint32_t q : {2u, 3u}) {
            auto field = Field::prime(q);
            const std::size_t n = 3;
            auto base = standard_flag(field, FlagType::full(n));

            std::set<Flag> all;
            const std::uint64_t points = q * q * q;
            for (std::uint64_t vi = 1; vi < points; ++vi)
                for (std::uint64_t wi = 1; wi < points; ++wi) {
                    FieldMatrix rows(field, 2, n);
                    std::uint64_t v = vi, w = wi;
                    for (std::size_t c = 0; c < n; ++c) {
                        rows.at(0, c) = static_cast<std::uint32_t>(v % q);
                        rows.at(1, c) = static_cast<std::uint32_t>(w % q);
                        v /= q;
                        w /= q;
                    }
                    if (rank(rows) != 2) continue;
                    auto line = Subspace::from_rows(rows.block(0, 1, 0, n));
                    all.insert(Flag(FlagType::full(n), {line, Subspace::from_rows(rows)}));
                }
            check(all.size() == (q * q + q + 1) * (q + 1), "full flag count is off");

            for (const auto& pi : all_permutations(n)) {
                auto circle = circle_enumerate(pi, field);
                std::uint64_t expect = 1;
                for (std::size_t i = 0; i < pi.length(); ++i) expect *= q;
                check(circle.size() == expect, "circle size is not q^length");
                std::set<Flag> direct;
                for (const auto& f : all)
                    if (relative_position(base, f) == pi) direct.insert(f);
                check(std::set<Flag>(circle.begin(), circle.end()) == direct,
                      "circle disagrees with the relative-position bin");
            }
        }
    });
}

// Designed parameters of every construction at desk scale, with the
// pairwise scan and the group-closure shortcut agreeing in each case.
inline SuiteResult suite_code_params() {
    return detail::timed("code_params", [](detail::Checker& check) {
        auto both = [&check](const FlagCode& code, std::size_t d, std::size_t dim,
                             std::size_t size) {
            check(code.dim() == dim, "code dimension is off");
            check(code.size() == size, "codebook size is off");
            const auto pairwise = code_min_distance(code, DistanceMode::pairwise);
            check(pairwise == d, "pairwise minimum distance is off");
            check(code_min_distance(code, DistanceMode::group) == pairwise,
                  "group-mode distance disagrees with the pairwise scan");
        };

        both(code_lifted(mrd_field_rep(2, 2), 4), 2, 2, 4);
        for (std::uint64_t q : {2ull, 3ull})
            both(code_sandwich(1, mrd_field_rep(q, 1), mrd_field_rep(q, 2)), 2, 3,
                 static_cast<std::size_t>(q * q * q));
        both(code_checkerboard({mrd_field_rep(2, 1), mrd_field_rep(2, 2)}), 2, 3, 8);
        both(code_checkerboard({mrd_field_rep(2, 1), mrd_field_rep(2, 2), mrd_field_rep(2, 4)}),
             4, 7, 128);
        for (auto [n, k] : std::vector<std::pair<std::size_t, std::size_t>>{
                 {4, 1}, {5, 1}, {5, 2}, {6, 2}}) {
            const std::size_t dim = (n - k) * (n - k - 1) / 2;
            both(code_derived(n, k, 2), k + 1, dim, std::size_t{1} << dim);
        }
    });
}

// Rank-distance oracles: field-representation codes of every order up to
// 16 have minimum nonzero rank k, and Gabidulin codes meet their designed
// distance, both by exhaustive scans of the codebooks.
inline SuiteResult suite_mrd() {
    return detail::timed("mrd", [](detail::Checker& check) {
        for (std::uint64_t q : {2ull, 3ull, 4ull, 5ull, 7ull, 8ull, 9ull, 11ull, 13ull, 16ull})
            for (std::size_t k = 1;; ++k) {
                std::uint64_t order = 1;
                for (std::size_t i = 0; i < k; ++i) order *= q;
                if (order > 16) break;
                auto code = mrd_field_rep(q, k);
                check(code.min_rank() == k, "field representation misses rank k");
                check(code.size() == order, "field representation size is off");
            }
        for (std::uint64_t q : {2ull, 3ull})
            for (std::size_t m = 1; m <= 4; ++m) {
                std::uint64_t qm = 1;
                for (std::size_t i = 0; i < m; ++i) qm *= q;
                if (qm > 16) continue;
                for (std::size_t np = 1; np <= m; ++np)
                    for (std::size_t kappa = 1; kappa <= np; ++kappa) {
                        std::uint64_t words = 1;
                        bool fits = true;
                        for (std::size_t i = 0; i < kappa && fits; ++i) {
                            words *= qm;
                            if (words > (1ull << 14)) fits = false;
                        }
                        if (!fits) continue;
                        auto code = mrd_gabidulin(q, m, np, kappa);
                        check(code.min_rank() == np - kappa + 1,
                              "Gabidulin code misses its designed distance");
                    }
            }
    });
}

// Decoding guarantee on the butterfly network: every targeted corruption
// with one unit of damage (strictly below the distance) decodes back to
// the sent codeword, about a thousand seed-fixed trials per code, with the
// per-step bookkeeping re-checked on every row.
inline SuiteResult suite_channel() {
    return detail::timed("channel", [](detail::Checker& check) {
        auto net = topology_from_string(detail::butterfly_text());
        const std::vector<FlagCode> codes = {
            code_derived(4, 1, 2),
            code_sandwich(1, mrd_field_rep(2, 1), mrd_field_rep(2, 2))};
        for (const auto& code : codes) {
            const std::size_t m = code.type().size();
            const auto d = code_min_distance(code, DistanceMode::pairwise);
            check(d == 2, "expected distance two at this scale");
            std::size_t pattern_index = 0;
            for (std::size_t at = 0; at < m; ++at)
                for (bool erase : {true, false}) {
                    TransmissionConfig cfg;
                    cfg.seed = 52000 + 1000 * pattern_index++;
                    cfg.mode = TransmissionConfig::Mode::targeted;
                    cfg.targeted.assign(m, {0, 0});
                    cfg.targeted[at] = erase ? std::make_pair(std::size_t{1}, std::size_t{0})
                                             : std::make_pair(std::size_t{0}, std::size_t{1});
                    auto stats = monte_carlo(code, net, cfg, 167);
                    check(stats.successes == 167, "a trial below the distance failed");
                    for (const auto& row : stats.rows) {
                        check(row.error_count == row.sum_rho + row.sum_f,
                              "error count is not the sum of the step counts");
                        check(row.error_count == 1, "targeted corruption missed its count");
                        check(row.success && row.unique, "decode was not uniquely correct");
                    }
                }
        }
    });
}

// Band erasure decoder, exhaustively: every codeword of the width-2 band
// code in dimension 5 against every erasure pattern; runs within the band
// width recover the generator exactly and longer runs are refused.
inline SuiteResult suite_erasure() {
    return detail::timed("erasure", [](detail::Checker& check) {
        const std::size_t n = 5, k = 2;
        auto code = code_derived(n, k, 2);
        for (std::size_t w = 0; w < code.size(); ++w) {
            const auto& flag = code.codebook()[w];
            for (std::size_t mask = 0; mask < (1u << (n - 1)); ++mask) {
                std::size_t run = 0, longest = 0;
                for (std::size_t step = 0; step < n - 1; ++step) {
                    run = (mask & (1u << step)) ? run + 1 : 0;
                    longest = std::max(longest, run);
                }
                std::vector<Subspace> members;
                Subspace prev = Subspace::zero(flag.field_ptr(), n);
                for (std::size_t step = 0; step < n - 1; ++step) {
                    if (!(mask & (1u << step))) prev = flag.member(step);
                    members.push_back(prev);
                }
                StutteringFlag damaged{members};
                if (longest <= k) {
                    bool ok = false;
                    try {
                        ok = decode_derived_erasure(n, k, 2, damaged) == code.generators()[w];
                    } catch (const Error&) {
                    }
                    check(ok, "a legal erasure pattern failed to decode");
                } else {
                    bool refused = false;
                    try {
                        decode_derived_erasure(n, k, 2, damaged);
                    } catch (const Error& e) {
                        refused = e.code() == Errc::RunTooLong;
                    }
                    check(refused, "an illegal run was not refused");
                }
            }
        }
    });
}

// Block distance formula: for random matrices in the block pattern of
// every type with n <= 6 over GF(2) and GF(3), the rank-sum formula equals
// the subspace-meet distance it summarizes.
inline SuiteResult suite_distmat() {
    return detail::timed("distmat", [](detail::Checker& check) {
        for (std::uint32_t q : {2u, 3u}) {
            auto field = Field::prime(q);
            Rng rng(606 + q);
            for (std::size_t n = 2; n <= 6; ++n)
                for (const auto& type : detail::all_types(n)) {
                    auto base = standard_flag(field, type);
                    for (std::size_t trial = 0; trial < 18; ++trial) {
                        auto g = detail::random_in_pattern(field, type, rng);
                        check(ebar(g, type) == grassmann_distance(base, base.apply(g)),
                              "rank-sum formula disagrees with the flag distance");
                    }
                }
        }
    });
}

struct Suite {
    const char* name;
    const char* summary;
    SuiteResult (*run)();
};

inline const std::vector<Suite>& suites() {
    static const std::vector<Suite> all = {
        {"lesym", "permutation word-length identities, n <= 7", suite_lesym},
        {"dE", "flag metrics against permutation statistics", suite_dE},
        {"bruhat", "Bruhat normal form reconstruction", suite_bruhat},
        {"circles", "circle cardinalities in GL(3)", suite_circles},
        {"code_params", "designed parameters of all constructions", suite_code_params},
        {"mrd", "rank-distance oracles", suite_mrd},
        {"channel", "decoding guarantee below the distance", suite_channel},
        {"erasure", "band erasure decoder, exhaustive", suite_erasure},
        {"distmat", "block rank-sum distance formula", suite_distmat},
    };
    return all;
}

inline SuiteResult run_suite(const std::string& name) {
    for (const auto& s : suites())
        if (name == s.name) return s.run();
    fail(Errc::ParameterOutOfRange, "unknown verification suite: " + name);
}

}  // namespace flagcodes::verify
