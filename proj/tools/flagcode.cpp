#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <iomanip>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "flagcodes/channel.hpp"
#include "flagcodes/errors.hpp"
#include "flagcodes/flag_code.hpp"
#include "flagcodes/flags.hpp"
#include "flagcodes/mrd.hpp"
#include "flagcodes/permutation.hpp"
#include "flagcodes/topology.hpp"
#include "flagcodes/verify.hpp"

using namespace flagcodes;

namespace {

// exit codes: 0 ok, 1 validation, 2 file I/O, 3 verification failure

std::ifstream open_input(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail(Errc::IoError, "cannot open " + path);
    return in;
}

std::ofstream open_output(const std::string& path) {
    std::ofstream out(path);
    if (!out) fail(Errc::IoError, "cannot write " + path);
    return out;
}

struct ConstructionParams {
    std::string tag;
    std::int64_t q = -1;
    std::int64_t n = -1;
    std::int64_t k = -1;
    std::int64_t m = -1;
    std::int64_t t = -1;
};

std::int64_t need(std::int64_t value, const char* name, const char* tag) {
    require(value >= 0, Errc::ParameterOutOfRange,
            std::string(tag) + " needs --" + name);
    return value;
}

FlagCode build_code(const ConstructionParams& p) {
    if (p.tag == "derived")
        return code_derived(static_cast<std::size_t>(need(p.n, "n", "derived")),
                            static_cast<std::size_t>(need(p.k, "k", "derived")),
                            static_cast<std::uint64_t>(need(p.q, "q", "derived")));
    if (p.tag == "sandwich") {
        const auto m = static_cast<std::size_t>(need(p.m, "m", "sandwich"));
        const auto q = static_cast<std::uint64_t>(need(p.q, "q", "sandwich"));
        return code_sandwich(m, mrd_field_rep(q, m), mrd_field_rep(q, 2 * m));
    }
    if (p.tag == "checkerboard") {
        const auto t = static_cast<std::size_t>(need(p.t, "t", "checkerboard"));
        const auto q = static_cast<std::uint64_t>(need(p.q, "q", "checkerboard"));
        std::vector<MrdCode> levels;
        for (std::size_t i = 0; i <= t; ++i)
            levels.push_back(mrd_field_rep(q, std::size_t{1} << i));
        return code_checkerboard(levels);
    }
    if (p.tag == "lifted") {
        const auto q = static_cast<std::uint64_t>(need(p.q, "q", "lifted"));
        const auto k = static_cast<std::size_t>(need(p.k, "k", "lifted"));
        const auto n = static_cast<std::size_t>(need(p.n, "n", "lifted"));
        require(n >= 2 * k, Errc::ParameterOutOfRange,
                "lifted needs n >= 2k to place the identity and the code word");
        auto base = mrd_field_rep(q, k);
        if (n - k > k) base = mrd_pad_columns(base, n - k);
        return code_lifted(base, n);
    }
    fail(Errc::ParameterOutOfRange, "unknown construction: " + p.tag);
}

std::string type_string(const FlagType& type) {
    std::ostringstream os;
    for (std::size_t i = 0; i < type.dims().size(); ++i) {
        if (i) os << ',';
        os << type.dims()[i];
    }
    return os.str();
}

struct ExperimentSpec {
    ConstructionParams code;
    std::string topology;
    TransmissionConfig cfg;
    bool has_seed = false;
    std::size_t trials = 0;
    std::size_t receiver = 0;
    std::string csv;
};

std::vector<std::pair<std::size_t, std::size_t>> parse_targeted(const std::string& text) {
    std::vector<std::pair<std::size_t, std::size_t>> out;
    std::istringstream list(text);
    std::string item;
    while (std::getline(list, item, ',')) {
        const auto colon = item.find(':');
        if (colon == std::string::npos) fail(Errc::ParseError, "targeted entries are rho:f");
        try {
            out.emplace_back(std::stoul(item.substr(0, colon)),
                             std::stoul(item.substr(colon + 1)));
        } catch (const std::exception&) {
            fail(Errc::ParseError, "bad targeted entry: " + item);
        }
    }
    return out;
}

// flat key=value lines; relative paths resolve against the spec file
ExperimentSpec read_experiment(const std::string& path) {
    auto in = open_input(path);
    const auto base_dir = std::filesystem::path(path).parent_path();
    ExperimentSpec spec;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line[0] == '#') continue;
        const auto eq = line.find('=');
        require(eq != std::string::npos, Errc::ParseError,
                "line " + std::to_string(lineno) + " is not key=value");
        const auto key = line.substr(0, eq);
        const auto value = line.substr(eq + 1);
        try {
            if (key == "construction") {
                spec.code.tag = value;
            } else if (key == "q") {
                spec.code.q = std::stoll(value);
            } else if (key == "n") {
                spec.code.n = std::stoll(value);
            } else if (key == "k") {
                spec.code.k = std::stoll(value);
            } else if (key == "m") {
                spec.code.m = std::stoll(value);
            } else if (key == "t") {
                spec.code.t = std::stoll(value);
            } else if (key == "topology") {
                auto p = std::filesystem::path(value);
                spec.topology = p.is_absolute() ? p.string() : (base_dir / p).string();
            } else if (key == "mode") {
                if (value == "random")
                    spec.cfg.mode = TransmissionConfig::Mode::random;
                else if (value == "targeted")
                    spec.cfg.mode = TransmissionConfig::Mode::targeted;
                else
                    fail(Errc::ParseError, "mode must be random or targeted");
            } else if (key == "loss") {
                spec.cfg.loss_probability = std::stod(value);
            } else if (key == "error_packets") {
                spec.cfg.error_packets = std::stoul(value);
            } else if (key == "targeted") {
                spec.cfg.targeted = parse_targeted(value);
            } else if (key == "retry_limit") {
                spec.cfg.retry_limit = std::stoul(value);
            } else if (key == "reset_buffers") {
                spec.cfg.reset_buffers = std::stoul(value) != 0;
            } else if (key == "seed") {
                spec.cfg.seed = std::stoull(value);
                spec.has_seed = true;
            } else if (key == "trials") {
                spec.trials = std::stoul(value);
            } else if (key == "receiver") {
                spec.receiver = std::stoul(value);
            } else if (key == "csv") {
                auto p = std::filesystem::path(value);
                spec.csv = p.is_absolute() ? p.string() : (base_dir / p).string();
            } else {
                fail(Errc::ParseError, "unknown key: " + key);
            }
        } catch (const Error&) {
            throw;
        } catch (const std::exception&) {
            fail(Errc::ParseError, "bad value on line " + std::to_string(lineno));
        }
    }
    require(!spec.code.tag.empty(), Errc::ParameterOutOfRange, "construction is required");
    require(!spec.topology.empty(), Errc::ParameterOutOfRange, "topology is required");
    require(spec.has_seed, Errc::ParameterOutOfRange, "an explicit seed is required");
    require(spec.trials >= 1, Errc::ParameterOutOfRange, "trials must be at least 1");
    return spec;
}

int cmd_sim(const std::string& spec_path) {
    const auto spec = read_experiment(spec_path);
    auto code = build_code(spec.code);
    auto topo_in = open_input(spec.topology);
    auto net = read_topology(topo_in);
    auto stats = monte_carlo(code, net, spec.cfg, spec.trials, spec.receiver);

    std::ostream* summary = &std::cout;
    if (spec.csv.empty()) {
        write_statistics_csv(std::cout, stats);
        summary = &std::cerr;
    } else {
        auto out = open_output(spec.csv);
        write_statistics_csv(out, stats);
    }
    *summary << "trials=" << stats.rows.size() << " successes=" << stats.successes
             << " failures=" << stats.rows.size() - stats.successes << " ties=" << stats.ties
             << " below_distance=" << stats.below_distance_trials
             << " below_distance_successes=" << stats.below_distance_successes
             << " d=" << stats.min_distance << '\n';
    return stats.below_distance_successes == stats.below_distance_trials ? 0 : 3;
}

int cmd_verify(const std::string& only) {
    std::vector<verify::SuiteResult> results;
    if (only.empty())
        for (const auto& s : verify::suites()) results.push_back(s.run());
    else
        results.push_back(verify::run_suite(only));
    bool all = true;
    for (const auto& r : results) {
        if (r.passed)
            std::cout << r.name << ": PASS (" << r.checks << " checks, " << std::fixed
                      << std::setprecision(2) << r.seconds << "s)\n";
        else
            std::cout << r.name << ": FAIL (" << r.detail << ")\n";
        all = all && r.passed;
    }
    return all ? 0 : 3;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"flag codes over network channels: construction, simulation, verification"};
    app.require_subcommand(1);
    int rc = 0;

    auto* perm = app.add_subcommand("perm", "permutation statistics");
    perm->require_subcommand(1);
    auto* perm_stats = perm->add_subcommand("stats", "print l, depth, ltr, s for one permutation");
    std::vector<std::uint32_t> one_line;
    perm_stats->add_option("entries", one_line, "one-line notation, 1-based")->required();
    perm_stats->callback([&] {
        const auto p = Permutation::from_one_line(one_line);
        std::cout << "l=" << p.length() << " depth=" << p.depth()
                  << " ltr=" << p.transposition_length() << " s=" << p.sum_of_distances()
                  << '\n';
    });
    auto* perm_hist = perm->add_subcommand("hist", "print the depth histogram of S_n");
    std::size_t hist_n = 0;
    perm_hist->add_option("n", hist_n, "degree")->required();
    perm_hist->callback([&] {
        for (const auto& [depth, count] : depth_histogram(hist_n))
            std::cout << depth << ' ' << count << '\n';
    });

    auto* code = app.add_subcommand("code", "flag code files");
    code->require_subcommand(1);
    auto* code_gen = code->add_subcommand("gen", "construct a code and write it to a file");
    ConstructionParams params;
    std::string out_path;
    code_gen->add_option("--construction", params.tag, "lifted|sandwich|checkerboard|derived")
        ->required();
    code_gen->add_option("--q", params.q, "field order");
    code_gen->add_option("--n", params.n, "ambient dimension");
    code_gen->add_option("--k", params.k, "band width / code dimension");
    code_gen->add_option("--m", params.m, "sandwich block size");
    code_gen->add_option("--t", params.t, "checkerboard tower height");
    code_gen->add_option("--out", out_path, "output file")->required();
    code_gen->callback([&] {
        auto c = build_code(params);
        auto out = open_output(out_path);
        write_flag_code(out, c);
        std::cout << "wrote " << out_path << ": construction=" << c.construction()
                  << " q=" << c.field()->q() << " n=" << c.type().ambient()
                  << " T=" << type_string(c.type()) << " dim=" << c.dim()
                  << " size=" << c.size() << '\n';
    });
    auto* code_mindist = code->add_subcommand("mindist", "minimum distance of a stored code");
    std::string code_path, mode = "pairwise";
    code_mindist->add_option("file", code_path, "code file")->required();
    code_mindist->add_option("--mode", mode, "group|pairwise")
        ->check(CLI::IsMember({"group", "pairwise"}));
    code_mindist->callback([&] {
        auto in = open_input(code_path);
        auto c = read_flag_code(in);
        const auto d = code_min_distance(
            c, mode == "group" ? DistanceMode::group : DistanceMode::pairwise);
        std::cout << "d=" << d << " dim=" << c.dim() << '\n';
    });

    auto* sim = app.add_subcommand("sim", "run a monte carlo experiment");
    std::string spec_path;
    sim->add_option("spec", spec_path, "experiment file, flat key=value lines")->required();
    sim->callback([&] { rc = cmd_sim(spec_path); });

    auto* ver = app.add_subcommand("verify", "run the exhaustive verification suites");
    std::string only;
    ver->add_option("--only", only, "run a single suite by name");
    ver->callback([&] { rc = cmd_verify(only); });

    auto* decode = app.add_subcommand("decode", "decode received spaces");
    decode->require_subcommand(1);
    auto* dec_min = decode->add_subcommand("mindist", "closest codeword in a stored code");
    std::string dec_code_path, dec_flag_path;
    dec_min->add_option("--code", dec_code_path, "code file")->required();
    dec_min->add_option("--flag", dec_flag_path, "received stuttering flag file")->required();
    dec_min->callback([&] {
        auto code_in = open_input(dec_code_path);
        auto c = read_flag_code(code_in);
        auto flag_in = open_input(dec_flag_path);
        auto received = read_stuttering_flag(flag_in, c.field());
        auto res = decode_min_distance(c, received);
        std::cout << "index=" << res.index << " error=" << res.error
                  << " unique=" << (res.unique ? 1 : 0) << '\n';
    });
    auto* dec_er = decode->add_subcommand("erasure", "recover a band generator from erasures");
    std::int64_t er_n = -1, er_k = -1, er_q = -1;
    std::string er_flag_path;
    dec_er->add_option("--n", er_n, "ambient dimension")->required();
    dec_er->add_option("--k", er_k, "band width")->required();
    dec_er->add_option("--q", er_q, "field order")->required();
    dec_er->add_option("--flag", er_flag_path, "received stuttering flag file")->required();
    dec_er->callback([&] {
        require(er_n >= 0 && er_k >= 0 && er_q >= 0, Errc::ParameterOutOfRange,
                "n, k, q must be nonnegative");
        auto flag_in = open_input(er_flag_path);
        auto received =
            read_stuttering_flag(flag_in, Field::of_order(static_cast<std::uint64_t>(er_q)));
        auto g = decode_derived_erasure(static_cast<std::size_t>(er_n),
                                        static_cast<std::size_t>(er_k),
                                        static_cast<std::uint64_t>(er_q), received);
        write_matrix(std::cout, g);
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return e.code() == Errc::IoError ? 2 : 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return rc;
}
