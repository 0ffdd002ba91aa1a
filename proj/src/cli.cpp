#include "ratinterp/cli.hpp"

#include <chrono>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "ratinterp/acceptance.hpp"
#include "ratinterp/bench.hpp"
#include "ratinterp/harness.hpp"
#include "ratinterp/text.hpp"

namespace ratinterp {

namespace {

struct InterpolateArgs {
    std::string algo;
    std::string input;
    std::size_t T = 0;
    Exponent D = 0;
    Exponent Dn = 0;
    std::string C;
    std::uint64_t N = std::uint64_t{1} << 40;
    std::uint64_t seed = 0;
    std::uint64_t max_iter = 10'000'000;
    std::size_t validate_extra = 0;
};

struct BenchArgs {
    std::string algo;
    std::string vary;
    std::string values;
    std::string fixed;
    std::size_t trials = 5;
    std::uint64_t seed = 0;
    std::size_t jobs = 1;
    std::uint64_t N = std::uint64_t{1} << 40;
    std::uint64_t max_iter = 10'000'000;
    std::string out;
};

struct SelftestArgs {
    bool quick = false;
    std::vector<int> only;
    std::uint64_t seed = AcceptanceOptions{}.seed;
};

struct Usage : std::runtime_error {
    using std::runtime_error::runtime_error;
};

Integer parse_integer(const std::string &text, const char *flag)
{
    Integer v;
    if (text.empty() || v.set_str(text, 10) != 0) {
        throw Usage(std::string("--") + flag + " expects an integer, got \"" + text + '"');
    }
    return v;
}

std::uint64_t parse_u64(const std::string &text, const std::string &what)
{
    std::size_t used = 0;
    std::uint64_t v = 0;
    try {
        v = std::stoull(text, &used);
    } catch (const std::exception &) {
        used = 0;
    }
    if (used == 0 || used != text.size() || text[0] == '-') {
        throw Usage(what + " expects a nonnegative integer, got \"" + text + '"');
    }
    return v;
}

std::vector<std::string> split(const std::string &s, char sep)
{
    std::vector<std::string> parts;
    std::string cur;
    std::istringstream in(s);
    while (std::getline(in, cur, sep)) {
        parts.push_back(cur);
    }
    return parts;
}

int interpolate(const InterpolateArgs &a, const CLI::App &cmd, std::ostream &out)
{
    const auto algo = parse_algorithm(a.algo);
    if (!algo) {
        throw Usage("unknown algorithm \"" + a.algo + "\" (expected urf1, urf2, urfp, mrf1 or mrf2)");
    }
    AlgorithmBounds b;
    for (const auto &flag : required_bounds(*algo)) {
        if (cmd.count("--" + flag) == 0) {
            throw Usage(a.algo + " requires --" + flag);
        }
    }
    if (cmd.count("--T")) b.T = a.T;
    if (cmd.count("--D")) b.D = a.D;
    if (cmd.count("--Dn")) b.Dn = a.Dn;
    if (cmd.count("--C")) b.C = parse_integer(a.C, "C");
    b.N = a.N;
    b.seed = a.seed;
    b.max_iter = a.max_iter;
    b.validation_points = a.validate_extra;

    FunctionSpec spec = load_function_spec(a.input);
    if (is_univariate(*algo) && spec.num.nvars() != 1) {
        throw Usage(a.algo + " needs a univariate spec (n = 1)");
    }
    CountingBlackBox bb(std::move(spec.num), std::move(spec.den));
    const auto start = std::chrono::steady_clock::now();
    const AlgorithmRun run = run_algorithm(*algo, bb, b);
    const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start);
    out << format_rational(run.function) << '\n';
    out << "queries=" << run.queries << " mu=" << run.mu << " time_ms=" << ms.count() << '\n';
    return kExitOk;
}

int bench(const BenchArgs &a, std::ostream &out)
{
    BenchConfig cfg;
    const auto algo = parse_algorithm(a.algo);
    if (!algo) {
        throw Usage("unknown algorithm \"" + a.algo + '"');
    }
    cfg.algo = *algo;
    if (a.vary == "T") {
        cfg.vary = BenchAxis::T;
    } else if (a.vary == "D") {
        cfg.vary = BenchAxis::D;
    } else if (a.vary == "n") {
        cfg.vary = BenchAxis::n;
    } else {
        throw Usage("--vary must be T, D or n");
    }
    for (const auto &v : split(a.values, ',')) {
        cfg.values.push_back(parse_u64(v, "--values"));
    }
    std::map<std::string, std::string> fixed;
    if (!a.fixed.empty()) {
        for (const auto &kv : split(a.fixed, ',')) {
            const auto eq = kv.find('=');
            if (eq == std::string::npos) {
                throw Usage("--fixed entries look like KEY=VALUE, got \"" + kv + '"');
            }
            const std::string key = kv.substr(0, eq);
            if (key != "T" && key != "D" && key != "C" && key != "n") {
                throw Usage("--fixed key must be T, D, C or n, got \"" + key + '"');
            }
            if (!fixed.emplace(key, kv.substr(eq + 1)).second) {
                throw Usage("--fixed sets " + key + " twice");
            }
        }
    }
    if (fixed.count(a.vary)) {
        throw Usage("--fixed must not set the varied parameter " + a.vary);
    }
    if (fixed.count("T")) cfg.T = parse_u64(fixed["T"], "T");
    if (fixed.count("D")) cfg.D = parse_u64(fixed["D"], "D");
    if (fixed.count("C")) cfg.C = parse_integer(fixed["C"], "C");
    if (fixed.count("n")) cfg.n = parse_u64(fixed["n"], "n");
    cfg.trials = a.trials;
    cfg.seed = a.seed;
    cfg.jobs = a.jobs;
    cfg.N = a.N;
    cfg.max_iter = a.max_iter;

    std::vector<BenchRow> rows;
    try {
        rows = run_bench(cfg);
    } catch (const Error &e) {
        if (e.code() == ErrorCode::InvalidArgument) {
            throw Usage(e.what());
        }
        throw;
    }
    if (a.out.empty()) {
        write_bench_csv(out, rows);
    } else {
        std::ofstream file(a.out);
        if (!file) {
            throw Usage("cannot write " + a.out);
        }
        write_bench_csv(file, rows);
    }
    return kExitOk;
}

int selftest(const SelftestArgs &a, std::ostream &out)
{
    AcceptanceOptions opts;
    opts.quick = a.quick;
    opts.only.insert(a.only.begin(), a.only.end());
    opts.seed = a.seed;
    const auto results = run_acceptance(opts, out);
    std::size_t passed = 0;
    std::size_t failed = 0;
    std::size_t skipped = 0;
    for (const auto &r : results) {
        if (r.skipped) {
            ++skipped;
        } else if (r.passed) {
            ++passed;
        } else {
            ++failed;
        }
    }
    out << passed << " passed, " << failed << " failed, " << skipped << " skipped\n";
    return failed == 0 ? kExitOk : kExitFailure;
}

} // namespace

int run_cli(const std::vector<std::string> &args, std::ostream &out, std::ostream &err)
{
    CLI::App app{"Sparse rational function interpolation from black-box values", "ratinterp"};
    app.require_subcommand(1);
    app.set_version_flag("--version", "ratinterp 0.1.0");

    InterpolateArgs ia;
    auto *icmd = app.add_subcommand("interpolate", "Recover a function given by a spec file");
    icmd->add_option("--algo", ia.algo, "urf1 | urf2 | urfp | mrf1 | mrf2")->required();
    icmd->add_option("--input", ia.input, "Function spec file (JSON)")->required();
    icmd->add_option("--T", ia.T, "Term bound");
    icmd->add_option("--D", ia.D, "Total degree bound");
    icmd->add_option("--Dn", ia.Dn, "Degree bound in the last variable (mrf2)");
    icmd->add_option("--C", ia.C, "Coefficient bound (decimal)");
    icmd->add_option("--N", ia.N, "Shift range for the multivariate algorithms")->capture_default_str();
    icmd->add_option("--seed", ia.seed, "Seed for the random shifts")->capture_default_str();
    icmd->add_option("--max-iter", ia.max_iter, "Cap on the multiplier search")->capture_default_str();
    icmd->add_option("--validate-extra", ia.validate_extra,
                     "Re-check a multivariate answer at this many random points");

    BenchArgs ba;
    auto *bcmd = app.add_subcommand("bench", "Emit benchmark CSV over random instances");
    bcmd->add_option("--algo", ba.algo, "urf1 | urf2 | urfp | mrf1 | mrf2")->required();
    bcmd->add_option("--vary", ba.vary, "Parameter to sweep: T, D or n")->required();
    bcmd->add_option("--values", ba.values, "Comma-separated sweep values")->required();
    bcmd->add_option("--fixed", ba.fixed, "Remaining parameters, e.g. T=10,D=50,C=100,n=1");
    bcmd->add_option("--trials", ba.trials, "Instances per value")->capture_default_str();
    bcmd->add_option("--seed", ba.seed, "Base seed")->capture_default_str();
    bcmd->add_option("--jobs", ba.jobs, "Worker threads")->capture_default_str();
    bcmd->add_option("--N", ba.N, "Shift range for the multivariate algorithms")->capture_default_str();
    bcmd->add_option("--max-iter", ba.max_iter, "Cap on the multiplier search")->capture_default_str();
    bcmd->add_option("--out", ba.out, "Write CSV here instead of stdout");

    SelftestArgs sa;
    auto *scmd = app.add_subcommand("selftest", "Run the acceptance criteria");
    scmd->add_flag("--quick", sa.quick, "Skip the statistical and long-running criteria");
    scmd->add_option("--only", sa.only, "Run only these criteria")->delimiter(',');
    scmd->add_option("--seed", sa.seed, "Seed for the random families")->capture_default_str();

    std::vector<const char *> argv;
    argv.reserve(args.size());
    for (const auto &s : args) {
        argv.push_back(s.c_str());
    }
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitBadInput;
    }

    try {
        if (*icmd) {
            return interpolate(ia, *icmd, out);
        }
        if (*bcmd) {
            return bench(ba, out);
        }
        return selftest(sa, out);
    } catch (const Usage &e) {
        err << "usage error: " << e.what() << '\n';
        return kExitBadInput;
    } catch (const Error &e) {
        err << "error: " << e.what() << '\n';
        const ErrorCode c = e.code();
        return c == ErrorCode::MuSearchExhausted || c == ErrorCode::ValidationFailed ? kExitNoResult : kExitBadInput;
    }
}

} // namespace ratinterp
