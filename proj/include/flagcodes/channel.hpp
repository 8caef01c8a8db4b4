#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "flag_code.hpp"
#include "flags.hpp"
#include "matrix.hpp"
#include "rng.hpp"
#include "subspace.hpp"
#include "topology.hpp"

namespace flagcodes {

struct TransmissionConfig {
    enum class Mode { random, targeted };

    std::uint64_t seed = 0;
    Mode mode = Mode::random;
    // random mode
    double loss_probability = 0.0;  // per edge, per step
    std::size_t error_packets = 0;  // corrupted edges per step
    // targeted mode: requested (erasures, errors) per step
    std::vector<std::pair<std::size_t, std::size_t>> targeted;
    std::size_t retry_limit = 1000;
    // per-step buffer reset instead of accumulating across steps
    bool reset_buffers = false;
};

struct ErrorCount {
    std::size_t total = 0;
    std::vector<std::size_t> erasures;  // rho_i
    std::vector<std::size_t> errors;    // f_i
};

struct TransmissionRecord {
    std::string receiver;
    Flag sent;
    StutteringFlag received;
    std::vector<FieldMatrix> steps;  // rows delivered in step i
    ErrorCount count;
};

// Per-step erasure/error split between the sent members V_i and the
// received spaces W_i: rho_i = dim V_i - dim(V_i cap W_i) and
// f_i = dim W_i - dim(V_i cap W_i). The total also equals the sum of
// dim(V_i + W_i) - dim(V_i cap W_i), which is re-checked on every call.
inline ErrorCount error_count(const StutteringFlag& sent, const StutteringFlag& received) {
    require(sent.size() == received.size(), Errc::LengthMismatch,
            "flags must have the same length");
    ErrorCount out;
    for (std::size_t i = 0; i < sent.size(); ++i) {
        const auto& v = sent.member(i);
        const auto& w = received.member(i);
        const std::size_t cap = meet_dim(v, w);
        const std::size_t rho = v.dim() - cap;
        const std::size_t f = w.dim() - cap;
        require(sum(v, w).dim() - cap == rho + f, Errc::Internal,
                "modular identity violated in the step count");
        out.erasures.push_back(rho);
        out.errors.push_back(f);
        out.total += rho + f;
    }
    return out;
}

inline StutteringFlag to_stuttering(const Flag& flag) { return StutteringFlag(flag.members()); }

inline ErrorCount error_count(const Flag& sent, const StutteringFlag& received) {
    return error_count(to_stuttering(sent), received);
}

namespace detail {

inline std::uint32_t draw_element(Rng& rng, const Field& field) {
    return static_cast<std::uint32_t>(rng.below(field.q()));
}

inline std::vector<std::uint32_t> draw_vector(Rng& rng, const Field& field, std::size_t n) {
    std::vector<std::uint32_t> v(n);
    for (auto& x : v) x = draw_element(rng, field);
    return v;
}

inline std::vector<std::uint32_t> draw_combination(Rng& rng, const Field& field,
                                                   const std::vector<std::vector<std::uint32_t>>& rows,
                                                   std::size_t n) {
    std::vector<std::uint32_t> out(n, 0);
    for (const auto& row : rows) {
        const std::uint32_t c = draw_element(rng, field);
        if (c)
            for (std::size_t j = 0; j < n; ++j) out[j] = field.add(out[j], field.mul(c, row[j]));
    }
    return out;
}

inline FieldMatrix rows_to_matrix(const FieldPtr& field,
                                  const std::vector<std::vector<std::uint32_t>>& rows,
                                  std::size_t n) {
    FieldMatrix m(field, rows.size(), n);
    for (std::size_t r = 0; r < rows.size(); ++r)
        for (std::size_t c = 0; c < n; ++c) m.at(r, c) = rows[r][c];
    return m;
}

inline void check_capacity(const NetworkTopology& net, const Flag& codeword) {
    std::size_t max_increment = 0, prev = 0;
    for (auto d : codeword.type().dims()) {
        max_increment = std::max(max_increment, d - prev);
        prev = d;
    }
    for (auto r : net.receivers())
        require(max_increment <= net.min_cut(r), Errc::CapacityExceeded,
                "step increment exceeds the min-cut to receiver " + net.name(r));
}

inline std::vector<TransmissionRecord> simulate_random(const NetworkTopology& net,
                                                       const Flag& codeword,
                                                       const TransmissionConfig& cfg, Rng& rng) {
    const auto& field = codeword.field();
    const auto fieldp = codeword.field_ptr();
    const std::size_t n = codeword.type().ambient();
    const std::size_t m = codeword.type().size();
    const std::size_t nodes = net.node_count();
    using Packet = std::vector<std::uint32_t>;

    std::vector<std::vector<Packet>> buffer(nodes);
    std::vector<std::vector<std::vector<Packet>>> delivered(
        net.receivers().size(), std::vector<std::vector<Packet>>(m));

    for (std::size_t step = 0; step < m; ++step) {
        const auto& basis = codeword.member(step).basis();
        std::vector<Packet> source_rows;
        for (std::size_t r = 0; r < basis.rows(); ++r) {
            Packet row(n);
            for (std::size_t c = 0; c < n; ++c) row[c] = basis.at(r, c);
            source_rows.push_back(std::move(row));
        }

        // corrupted edges for this step, drawn up front
        std::vector<bool> corrupted(net.edges().size(), false);
        for (std::size_t e = 0; e < cfg.error_packets; ++e)
            corrupted[rng.below(net.edges().size())] = true;

        for (auto u : net.topological_order()) {
            const auto& rows = (u == net.source()) ? source_rows : buffer[u];
            for (auto e : net.out_edges(u)) {
                if (rows.empty()) continue;  // nothing received yet, edge idle
                Packet payload = draw_combination(rng, field, rows, n);
                if (corrupted[e]) payload = draw_vector(rng, field, n);
                if (cfg.loss_probability > 0.0 && rng.bernoulli(cfg.loss_probability)) continue;
                const std::size_t dest = net.edges()[e].second;
                buffer[dest].push_back(payload);
                for (std::size_t ri = 0; ri < net.receivers().size(); ++ri)
                    if (net.receivers()[ri] == dest) delivered[ri][step].push_back(payload);
            }
        }
        if (cfg.reset_buffers)
            for (auto& b : buffer) b.clear();
    }

    std::vector<TransmissionRecord> records;
    for (std::size_t ri = 0; ri < net.receivers().size(); ++ri) {
        std::vector<FieldMatrix> steps;
        std::vector<Subspace> members;
        Subspace w = Subspace::zero(fieldp, n);
        for (std::size_t step = 0; step < m; ++step) {
            auto z = rows_to_matrix(fieldp, delivered[ri][step], n);
            w = sum(w, Subspace::from_rows(z));
            steps.push_back(std::move(z));
            members.push_back(w);
        }
        StutteringFlag received(members);
        auto count = error_count(codeword, received);
        records.push_back(TransmissionRecord{net.name(net.receivers()[ri]), codeword,
                                             std::move(received), std::move(steps),
                                             std::move(count)});
    }
    return records;
}

inline std::vector<TransmissionRecord> simulate_targeted(const NetworkTopology& net,
                                                         const Flag& codeword,
                                                         const TransmissionConfig& cfg,
                                                         Rng& rng) {
    const auto& field = codeword.field();
    const auto fieldp = codeword.field_ptr();
    const std::size_t n = codeword.type().ambient();
    const std::size_t m = codeword.type().size();
    require(cfg.targeted.size() == m, Errc::LengthMismatch,
            "need one (erasures, errors) request per step");
    for (std::size_t i = 0; i < m; ++i)
        require(cfg.targeted[i].first <= codeword.type().dims()[i], Errc::ParameterOutOfRange,
                "requested erasures exceed the step dimension");

    // The received spaces are nested, so a direction injected early keeps
    // counting at every later step until some V_j absorbs it. A retry
    // therefore starts the whole transmission over; redrawing one step
    // cannot fix a commitment made before it.
    std::vector<FieldMatrix> steps;
    std::vector<Subspace> members;
    bool done = false;
    for (std::size_t attempt = 0; attempt < cfg.retry_limit && !done; ++attempt) {
        steps.clear();
        members.clear();
        Subspace w = Subspace::zero(fieldp, n);
        bool ok = true;
        for (std::size_t step = 0; step < m && ok; ++step) {
            const auto [want_rho, want_f] = cfg.targeted[step];
            const auto& v = codeword.member(step);
            std::vector<std::vector<std::uint32_t>> basis_rows;
            for (std::size_t r = 0; r < v.dim(); ++r) {
                std::vector<std::uint32_t> row(n);
                for (std::size_t c = 0; c < n; ++c) row[c] = v.basis().at(r, c);
                basis_rows.push_back(std::move(row));
            }
            // sub-sample of V_step spanned by d_step - rho random combinations
            std::vector<std::vector<std::uint32_t>> rows;
            for (std::size_t r = 0; r < v.dim() - want_rho; ++r)
                rows.push_back(draw_combination(rng, field, basis_rows, n));
            Subspace candidate = sum(w, Subspace::from_rows(rows_to_matrix(fieldp, rows, n)));
            // error directions, drawn to land outside V_step + candidate
            for (std::size_t e = 0; e < want_f && ok; ++e) {
                auto outside = sum(v, candidate);
                std::size_t tries = 0;
                while (ok) {
                    auto vec = draw_vector(rng, field, n);
                    auto probe = rows_to_matrix(fieldp, {vec}, n);
                    if (!outside.contains(probe)) {
                        rows.push_back(vec);
                        candidate = sum(candidate, Subspace::from_rows(probe));
                        break;
                    }
                    if (++tries >= cfg.retry_limit) ok = false;
                }
            }
            if (!ok) break;
            const std::size_t cap = meet_dim(candidate, v);
            if (v.dim() - cap != want_rho || candidate.dim() - cap != want_f) {
                ok = false;
                break;
            }
            steps.push_back(rows_to_matrix(fieldp, rows, n));
            members.push_back(candidate);
            w = candidate;
        }
        done = ok;
    }
    require(done, Errc::RetryLimitExceeded,
            "could not realize the requested counts within the retry limit");

    StutteringFlag received(members);
    auto count = error_count(codeword, received);
    std::vector<TransmissionRecord> records;
    for (auto r : net.receivers())
        records.push_back(TransmissionRecord{net.name(r), codeword, received, steps, count});
    return records;
}

}  // namespace detail

// Sends the codeword over the network, one time step per flag member.
// Random mode propagates packets through the DAG: every edge carries one
// fresh random combination of what its tail has seen (the source mixes
// the rows of the current member), subject to loss and corruption.
// Targeted mode builds the received spaces directly with the requested
// per-step counts. One record per receiver, in declaration order.
inline std::vector<TransmissionRecord> simulate_transfer(const NetworkTopology& net,
                                                         const Flag& codeword,
                                                         const TransmissionConfig& cfg,
                                                         Rng& rng) {
    require(cfg.loss_probability >= 0.0 && cfg.loss_probability <= 1.0,
            Errc::ParameterOutOfRange, "loss probability outside [0,1]");
    detail::check_capacity(net, codeword);
    if (cfg.mode == TransmissionConfig::Mode::targeted)
        return detail::simulate_targeted(net, codeword, cfg, rng);
    return detail::simulate_random(net, codeword, cfg, rng);
}

inline std::vector<TransmissionRecord> simulate_transfer(const NetworkTopology& net,
                                                         const Flag& codeword,
                                                         const TransmissionConfig& cfg) {
    Rng rng(cfg.seed);
    return simulate_transfer(net, codeword, cfg, rng);
}

struct DecodeResult {
    std::size_t index = 0;
    std::size_t error = 0;
    bool unique = false;
};

// Scans the whole codebook for the codeword closest to the received
// spaces; a tie is reported as non-unique rather than resolved.
inline DecodeResult decode_min_distance(const FlagCode& code, const StutteringFlag& received) {
    require(code.size() >= 1, Errc::EmptyCode, "codebook is empty");
    DecodeResult best;
    std::size_t ties = 0;
    for (std::size_t i = 0; i < code.size(); ++i) {
        const std::size_t e = error_count(code.codebook()[i], received).total;
        if (i == 0 || e < best.error) {
            best.index = i;
            best.error = e;
            ties = 1;
        } else if (e == best.error) {
            ++ties;
        }
    }
    best.unique = ties == 1;
    return best;
}

// Recovers g from erasure-only receptions of a derived band codeword.
// Any step whose space has full dimension j determines rows j-k-1..j-1
// of g (the reduction of a band matrix never touches its last k+1 rows),
// and the bottom k+1 rows carry no free entries at all, so g is pinned
// whenever no run of deficient steps is longer than k.
inline FieldMatrix decode_derived_erasure(std::size_t n, std::size_t k, std::uint64_t q,
                                          const StutteringFlag& received) {
    require(n >= 2, Errc::ParameterOutOfRange, "ambient dimension must be at least 2");
    require(k <= n - 1, Errc::ParameterOutOfRange, "band width must be at most n-1");
    require(received.size() == n - 1, Errc::LengthMismatch,
            "expected one space per proper step");
    auto field = Field::of_order(q);
    require_same_field(received.member(0).field(), *field);
    require(received.member(0).ambient() == n, Errc::AmbientMismatch,
            "ambient dimension mismatch");

    std::size_t run = 0;
    for (std::size_t j = 1; j < n; ++j) {
        if (received.member(j - 1).dim() < j) {
            ++run;
            require(run <= k, Errc::RunTooLong,
                    "a run of deficient steps is longer than the band width");
        } else {
            run = 0;
        }
    }
    for (std::size_t j = 1; j < n; ++j)
        require(received.member(j - 1).dim() <= j, Errc::InconsistentInput,
                "step dimension exceeds the sent dimension");

    auto g = FieldMatrix::identity(field, n);
    std::vector<bool> recovered(n, false);
    for (std::size_t r = (n >= k + 1 ? n - k - 1 : 0); r < n; ++r) recovered[r] = true;

    for (std::size_t j = 1; j < n; ++j) {
        const auto& w = received.member(j - 1);
        if (w.dim() != j) continue;
        const auto& basis = w.basis();  // canonical RREF rows
        for (std::size_t r = 0; r < j; ++r)
            for (std::size_t c = 0; c <= r; ++c)
                require(basis.at(r, c) == (c == r ? 1u : 0u), Errc::InconsistentInput,
                        "step space is not spanned by a unitriangular matrix");
        const std::size_t first = j >= k + 1 ? j - k - 1 : 0;
        for (std::size_t r = first; r < j; ++r) {
            for (std::size_t c = r + 1; c < n && c <= r + k; ++c)
                require(basis.at(r, c) == 0, Errc::InconsistentInput,
                        "recovered row has entries inside the zero band");
            if (recovered[r]) {
                for (std::size_t c = 0; c < n; ++c)
                    require(g.at(r, c) == basis.at(r, c), Errc::InconsistentInput,
                            "recovered rows conflict");
            } else {
                for (std::size_t c = 0; c < n; ++c) g.at(r, c) = basis.at(r, c);
                recovered[r] = true;
            }
        }
    }
    for (std::size_t r = 0; r < n; ++r)
        require(recovered[r], Errc::Internal, "row left undetermined after a legal run pattern");

    for (std::size_t j = 1; j < n; ++j) {
        auto sent = Subspace::from_rows(g.block(0, j, 0, n));
        require(sent.contains(received.member(j - 1)), Errc::InconsistentInput,
                "step space is not contained in the recovered codeword");
    }
    return g;
}

struct TrialRow {
    std::size_t trial = 0;
    std::uint64_t seed = 0;
    std::size_t sent_index = 0;
    std::size_t sum_rho = 0;
    std::size_t sum_f = 0;
    std::size_t error_count = 0;
    std::size_t decoded_index = 0;
    bool unique = false;
    bool success = false;
};

struct StatisticsRecord {
    std::vector<TrialRow> rows;
    std::size_t min_distance = 0;
    std::size_t successes = 0;
    std::size_t ties = 0;
    std::size_t below_distance_trials = 0;
    std::size_t below_distance_successes = 0;
};

// Runs independent trials: trial t seeds its own generator with
// cfg.seed + t, draws the sent codeword, simulates the transfer, and
// decodes at the chosen receiver (default: first declared).
inline StatisticsRecord monte_carlo(const FlagCode& code, const NetworkTopology& net,
                                    const TransmissionConfig& cfg, std::size_t trials,
                                    std::size_t receiver_index = 0) {
    require(trials >= 1, Errc::ParameterOutOfRange, "need at least one trial");
    require(receiver_index < net.receivers().size(), Errc::ParameterOutOfRange,
            "receiver index out of range");
    StatisticsRecord stats;
    stats.min_distance = code_min_distance(code, DistanceMode::pairwise);
    for (std::size_t t = 0; t < trials; ++t) {
        const std::uint64_t seed = cfg.seed + t;
        Rng rng(seed);
        const std::size_t sent = rng.below(code.size());
        auto records = simulate_transfer(net, code.codebook()[sent], cfg, rng);
        const auto& rec = records[receiver_index];
        auto decoded = decode_min_distance(code, rec.received);
        TrialRow row;
        row.trial = t;
        row.seed = seed;
        row.sent_index = sent;
        for (auto r : rec.count.erasures) row.sum_rho += r;
        for (auto f : rec.count.errors) row.sum_f += f;
        row.error_count = rec.count.total;
        row.decoded_index = decoded.index;
        row.unique = decoded.unique;
        row.success = decoded.unique && decoded.index == sent;
        if (row.success) ++stats.successes;
        if (!decoded.unique) ++stats.ties;
        if (row.error_count < stats.min_distance) {
            ++stats.below_distance_trials;
            if (row.success) ++stats.below_distance_successes;
        }
        stats.rows.push_back(row);
    }
    return stats;
}

inline void write_statistics_csv(std::ostream& os, const StatisticsRecord& stats) {
    os << "trial,seed,sent_index,sum_rho,sum_f,error_count,decoded_index,unique,success\n";
    for (const auto& r : stats.rows)
        os << r.trial << ',' << r.seed << ',' << r.sent_index << ',' << r.sum_rho << ','
           << r.sum_f << ',' << r.error_count << ',' << r.decoded_index << ','
           << (r.unique ? 1 : 0) << ',' << (r.success ? 1 : 0) << '\n';
}

}  // namespace flagcodes
