#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "qtrng/biphoton.hpp"
#include "qtrng/formats.hpp"
#include "qtrng/generator.hpp"
#include "qtrng/qutrit.hpp"
#include "qtrng/stats.hpp"
#include "qtrng/verification.hpp"

namespace {

// sysexits-style codes for usage and I/O problems; 0/2/3 carry the verdict.
constexpr int kExitAccept = 0;
constexpr int kExitReject = 2;
constexpr int kExitInconclusive = 3;
constexpr int kExitUsage = 64;
constexpr int kExitNoInput = 66;

struct GenerateArgs {
    std::uint64_t count = 0;
    std::string seed = "0";
    std::string public_seed;
    std::string public_file;
    double epsilon = 0.05;
    double delta = 0.1;
    double check_rate = 0.1;
    double threshold = 1.0;
    std::string source = "ideal";
    std::string format = "ascii";
    std::string out = "-";
    std::string report;
    unsigned jobs = 1;
};

void write_file_or_stdout(const std::string& path, const std::string& payload) {
    if (path == "-") {
        std::cout << payload;
        return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::ios_base::failure("cannot write '" + path + "'");
    f << payload;
    if (!f) throw std::ios_base::failure("write to '" + path + "' failed");
}

int verdict_exit_code(qtrng::Verdict v) {
    switch (v) {
        case qtrng::Verdict::Accept: return kExitAccept;
        case qtrng::Verdict::Reject: return kExitReject;
        default: return kExitInconclusive;
    }
}

int run_generate(const GenerateArgs& args) {
    qtrng::GeneratorConfig cfg;
    cfg.epsilon = args.epsilon;
    cfg.delta = args.delta;
    cfg.check_rate = args.check_rate;
    cfg.fidelity_threshold = args.threshold;
    cfg.target_output = args.count;
    cfg.validate();

    const std::uint64_t seed = qtrng::parse_seed(args.seed);
    const qtrng::SourceModel source = qtrng::parse_source_spec(args.source);
    const qtrng::StreamFormat format = qtrng::parse_format(args.format);

    qtrng::TritStream public_trits;
    std::optional<std::uint64_t> public_seed;
    if (!args.public_file.empty()) {
        std::ifstream f(args.public_file, std::ios::binary);
        if (!f) throw std::ios_base::failure("cannot read '" + args.public_file + "'");
        std::ostringstream buf;
        buf << f.rdbuf();
        public_trits = qtrng::parse_ascii(buf.str());
    } else {
        public_seed = qtrng::parse_seed(args.public_seed.empty() ? "0" : args.public_seed);
        qtrng::RandomStream pub =
            qtrng::RandomStream(*public_seed).substream("settings");
        public_trits.trits.reserve(args.count);
        for (std::uint64_t i = 0; i < args.count; ++i)
            public_trits.trits.push_back(static_cast<std::uint8_t>(pub.next_trit()));
    }

    const qtrng::RandomStream rng(seed);
    qtrng::SessionResult result =
        qtrng::run_session(source, public_trits, cfg, rng, args.jobs);
    result.report.public_seed = public_seed;

    const qtrng::StreamStats stats =
        result.output.trits.empty() ? qtrng::StreamStats{} : qtrng::analyze(result.output);
    const qtrng::StreamStats* stats_ptr = result.output.trits.empty() ? nullptr : &stats;

    std::string payload;
    switch (format) {
        case qtrng::StreamFormat::Ascii: payload = qtrng::format_ascii(result.output); break;
        case qtrng::StreamFormat::Raw: payload = qtrng::format_raw(result.output); break;
        case qtrng::StreamFormat::Json:
            payload = qtrng::session_to_json(result, stats_ptr).dump(2) + "\n";
            break;
    }
    write_file_or_stdout(args.out, payload);

    if (!args.report.empty())
        write_file_or_stdout(args.report,
                             qtrng::report_to_json(result.report, stats_ptr).dump(2) + "\n");

    std::cerr << "verdict=" << qtrng::verdict_name(result.report.verdict)
              << " Y=" << result.report.fidelity_estimate
              << " checks=" << result.report.checks << "/" << result.report.required_checks
              << " emitted=" << result.report.emitted << "\n";
    return verdict_exit_code(result.report.verdict);
}

int run_verify(int resolution) {
    qtrng::VerifyOptions opt;
    opt.resolution = resolution;
    const auto results = qtrng::run_verification(opt);
    for (const qtrng::CheckResult& r : results)
        std::cout << (r.pass ? "PASS" : "FAIL") << "  " << r.name << "  [" << r.detail << "]\n";
    return qtrng::all_passed(results) ? 0 : 1;
}

// Four 2x2 observables, one per line, row-major re im pairs (8 numbers).
std::array<qtrng::QubitObservable, 4> load_observables(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::ios_base::failure("cannot read '" + path + "'");
    std::vector<qtrng::Mat2> mats;
    std::string line;
    while (std::getline(f, line)) {
        std::istringstream ls(line);
        double v[8];
        if (!(ls >> v[0])) continue;
        for (int i = 1; i < 8; ++i)
            if (!(ls >> v[i]))
                throw std::invalid_argument("observable file: expected 8 numbers per line");
        qtrng::Mat2 m;
        for (std::size_t k = 0; k < 4; ++k) m.e[k] = {v[2 * k], v[2 * k + 1]};
        mats.push_back(m);
    }
    if (mats.size() != 4)
        throw std::invalid_argument("observable file: expected exactly 4 observables");
    return {qtrng::QubitObservable(mats[0]), qtrng::QubitObservable(mats[1]),
            qtrng::QubitObservable(mats[2]), qtrng::QubitObservable(mats[3])};
}

int run_chsh(const std::string& state_spec, const std::string& observables) {
    const qtrng::QutritState state = qtrng::parse_state_spec(state_spec);
    std::array<qtrng::QubitObservable, 4> obs{qtrng::chsh_a1(), qtrng::chsh_a2(),
                                              qtrng::chsh_b1(), qtrng::chsh_b2()};
    if (observables != "default") obs = load_observables(observables);

    const qtrng::Vec4 embedded = qtrng::sym_embed(state);
    const qtrng::Mat4 symmetrized = qtrng::chsh_symmetrized(obs[0], obs[1], obs[2], obs[3]);
    const double pair_value = qtrng::expectation4(
        embedded, qtrng::chsh_operator(obs[0], obs[1], obs[2], obs[3]));
    const double sym_value = qtrng::expectation4(embedded, symmetrized);
    const double spin_value = qtrng::expectation(state, qtrng::sym_restrict(symmetrized));

    std::printf("chsh            %.12f\n", pair_value);
    std::printf("chsh_symmetric  %.12f\n", sym_value);
    std::printf("chsh_spin       %.12f\n", spin_value);
    return 0;
}

int run_state_test(const std::string& state_spec) {
    const qtrng::QutritState state = qtrng::parse_state_spec(state_spec);
    for (const qtrng::BasisLabel axis :
         {qtrng::BasisLabel::Z, qtrng::BasisLabel::X, qtrng::BasisLabel::Y}) {
        const qtrng::OutcomeDistribution d = qtrng::born(state, qtrng::spin_basic(axis));
        std::printf("born_S%s        +1: %.12f   0: %.12f   -1: %.12f\n",
                    std::string(qtrng::basis_name(axis)).c_str(), d.p_plus, d.p_zero,
                    d.p_minus);
    }
    std::printf("concurrence     %.12f\n", qtrng::concurrence(state));
    std::printf("fidelity        %.12f\n", qtrng::fidelity_to_unbiased(state));
    std::printf("check_expect    %.12f\n",
                qtrng::expectation(state, qtrng::check_observable_squared()));
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Single-qutrit spin random generator: simulation, certification and "
                 "verification tools"};
    app.require_subcommand(1);

    GenerateArgs gen;
    CLI::App* generate = app.add_subcommand(
        "generate", "Run a certified generation session and write the trit stream");
    generate->add_option("--count", gen.count, "Output trits to produce")->required();
    generate->add_option("--seed", gen.seed, "Session seed (decimal or 0x-hex)");
    generate->add_option("--public-seed", gen.public_seed,
                         "Seed for the public setting trits (decimal or 0x-hex)");
    generate->add_option("--public-file", gen.public_file,
                         "Read public setting trits from an ascii trit file")
        ->excludes("--public-seed");
    generate->add_option("--epsilon", gen.epsilon, "Estimation precision in (0, 0.5]");
    generate->add_option("--delta", gen.delta, "Estimation failure probability in (0, 1)");
    generate->add_option("--check-rate", gen.check_rate,
                         "Fraction of emissions diverted to fidelity checks, in [0, 1)");
    generate->add_option("--threshold", gen.threshold,
                         "Accept iff Y >= threshold - epsilon; in (0, 1]");
    generate->add_option("--source", gen.source,
                         "Qutrit source: ideal | state:<amplitudes> | ensemble:<file>");
    generate->add_option("--format", gen.format, "Stream format: ascii | raw | json");
    generate->add_option("--out", gen.out, "Stream output path ('-' for stdout)");
    generate->add_option("--report", gen.report, "Write the JSON session report here");
    generate->add_option("--jobs", gen.jobs, "Parallel measurement workers");
    generate->set_config("--config", "", "Config file of key = value lines");
    generate->allow_config_extras(false);  // unknown keys are rejected by name

    int resolution = 64;
    CLI::App* verify =
        app.add_subcommand("verify", "Run the analytic identity suite and the grid search");
    verify->add_option("--resolution", resolution, "Grid resolution (>= 16)")
        ->check(CLI::Range(16, 1 << 20));

    std::string chsh_state = "1,0,1";
    std::string chsh_obs = "default";
    CLI::App* chsh = app.add_subcommand("chsh", "Evaluate the CHSH forms on a state");
    chsh->add_option("--state", chsh_state, "Qutrit state spec (embedded as a qubit pair)");
    chsh->add_option("--observables", chsh_obs, "default, or a file with four observables");

    std::string test_state = "unbiased0";
    CLI::App* state_test =
        app.add_subcommand("state-test", "Born probabilities, concurrence and fidelity");
    state_test->add_option("--state", test_state, "Qutrit state spec");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (generate->parsed()) return run_generate(gen);
        if (verify->parsed()) return run_verify(resolution);
        if (chsh->parsed()) return run_chsh(chsh_state, chsh_obs);
        if (state_test->parsed()) return run_state_test(test_state);
    } catch (const std::ios_base::failure& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNoInput;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
