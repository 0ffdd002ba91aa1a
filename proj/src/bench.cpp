#include "ratinterp/bench.hpp"

#include <atomic>
#include <chrono>
#include <exception>
#include <mutex>
#include <ostream>
#include <thread>

#include "ratinterp/harness.hpp"
#include "ratinterp/multipoly.hpp"
#include "ratinterp/multirat.hpp"
#include "ratinterp/unipoly.hpp"
#include "ratinterp/unirat.hpp"

namespace ratinterp {

std::optional<Algorithm> parse_algorithm(const std::string &name)
{
    if (name == "urf1") return Algorithm::Urf1;
    if (name == "urf2") return Algorithm::Urf2;
    if (name == "urfp") return Algorithm::Urfp;
    if (name == "mrf1") return Algorithm::Mrf1;
    if (name == "mrf2") return Algorithm::Mrf2;
    return std::nullopt;
}

std::string to_string(Algorithm a)
{
    switch (a) {
    case Algorithm::Urf1: return "urf1";
    case Algorithm::Urf2: return "urf2";
    case Algorithm::Urfp: return "urfp";
    case Algorithm::Mrf1: return "mrf1";
    case Algorithm::Mrf2: return "mrf2";
    }
    return "?";
}

bool is_univariate(Algorithm a)
{
    return a == Algorithm::Urf1 || a == Algorithm::Urf2 || a == Algorithm::Urfp;
}

std::vector<std::string> required_bounds(Algorithm a)
{
    switch (a) {
    case Algorithm::Urf1:
    case Algorithm::Urf2: return {"T", "C"};
    case Algorithm::Urfp: return {"D", "C"};
    case Algorithm::Mrf1: return {"T", "D", "C"};
    case Algorithm::Mrf2: return {"D", "Dn", "C"};
    }
    return {};
}

namespace {

template <class V>
const V &need(const std::optional<V> &v, const char *flag, Algorithm a)
{
    if (!v) {
        throw Error(ErrorCode::InvalidArgument, to_string(a) + " requires --" + flag);
    }
    return *v;
}

std::uint64_t splitmix64(std::uint64_t x)
{
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

using Clock = std::chrono::steady_clock;

std::int64_t elapsed_ms(Clock::time_point start)
{
    return std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - start).count();
}

// Interpolating f and g on their own: evaluate each at the points the
// algorithm would use and decode it as a polynomial.
std::int64_t base_case_ms(Algorithm a, const RationalFunction &h, const AlgorithmBounds &b)
{
    const auto start = Clock::now();
    const Integer &c = *b.C;
    auto uni = [&](const Integer &beta, const DecodeLimits &limits) {
        for (const MultiPoly *p : {&h.num(), &h.den()}) {
            (void)upoly_decode(p->to_uni().evaluate(beta), beta, c, limits);
        }
    };
    auto multi = [&](const SubstitutionChain &chain, std::optional<std::size_t> t, BoundMode mode) {
        for (const MultiPoly *p : {&h.num(), &h.den()}) {
            (void)mpoly_decode(chain, p->evaluate(chain.points), t, *b.D, c, mode);
        }
    };
    switch (a) {
    case Algorithm::Urf1:
        uni(2 * Integer(static_cast<unsigned long>(*b.T)) * c * c + 1, {std::nullopt, *b.T});
        break;
    case Algorithm::Urf2: {
        const unsigned long t1 = std::max<unsigned long>(*b.T, 5);
        uni(ceil_sqrt(2 * Integer(t1) * c * c), {std::nullopt, *b.T});
        break;
    }
    case Algorithm::Urfp:
        uni(3 * c + 1, {*b.D, std::nullopt});
        break;
    case Algorithm::Mrf1: {
        const Integer beta = 2 * Integer(static_cast<unsigned long>(*b.T)) * c * c + 1;
        const auto shifts = sample_shifts(h.nvars(), b.N, b.seed);
        multi(build_chain(beta, shifts, *b.D, ExpBase::TwiceDegreePlusOne), *b.T, BoundMode::Exact);
        break;
    }
    case Algorithm::Mrf2: {
        const auto shifts = sample_shifts(h.nvars(), b.N, b.seed);
        multi(build_chain(3 * c + 1, shifts, *b.D, ExpBase::DegreePlusOne), std::nullopt, BoundMode::Remark);
        break;
    }
    }
    return elapsed_ms(start);
}

} // namespace

AlgorithmRun run_algorithm(Algorithm a, BlackBox &bb, const AlgorithmBounds &b)
{
    if (is_univariate(a) && bb.nvars() != 1) {
        throw Error(ErrorCode::InvalidArgument, to_string(a) + " needs a univariate function");
    }
    const Integer &c = need(b.C, "C", a);
    InterpolationResult r;
    switch (a) {
    case Algorithm::Urf1: r = urfunsi1(bb, need(b.T, "T", a), c, b.max_iter); break;
    case Algorithm::Urf2: r = urfunsi2(bb, need(b.T, "T", a), c, b.max_iter); break;
    case Algorithm::Urfp: r = urfunsip(bb, need(b.D, "D", a), c, b.max_iter); break;
    case Algorithm::Mrf1:
    case Algorithm::Mrf2: {
        MultiInterpolationOptions opts;
        opts.seed = b.seed;
        opts.max_iter = b.max_iter;
        opts.validation_points = b.validation_points;
        if (a == Algorithm::Mrf1) {
            r = mrfunsi1(bb, need(b.T, "T", a), need(b.D, "D", a), c, b.N, opts);
        } else {
            r = mrfunsi2(bb, need(b.D, "D", a), need(b.Dn, "Dn", a), c, b.N, opts);
        }
        break;
    }
    }
    return {std::move(r.function), std::move(r.mu), r.queries};
}

std::vector<BenchRow> run_bench(const BenchConfig &cfg)
{
    if (cfg.values.empty()) {
        throw Error(ErrorCode::InvalidArgument, "bench needs at least one value");
    }
    if (cfg.trials < 1) {
        throw Error(ErrorCode::InvalidArgument, "bench needs at least one trial");
    }
    if (is_univariate(cfg.algo) && (cfg.vary == BenchAxis::n || cfg.n != 1)) {
        throw Error(ErrorCode::InvalidArgument, to_string(cfg.algo) + " is univariate; n must be 1");
    }
    if (cfg.vary != BenchAxis::T && !cfg.T) {
        throw Error(ErrorCode::InvalidArgument, "bench requires T in --fixed");
    }
    if (cfg.vary != BenchAxis::D && !cfg.D) {
        throw Error(ErrorCode::InvalidArgument, "bench requires D in --fixed");
    }
    if (!cfg.C) {
        throw Error(ErrorCode::InvalidArgument, "bench requires C in --fixed");
    }

    const std::size_t count = cfg.values.size() * cfg.trials;
    std::vector<BenchRow> rows(count);
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;

    auto work = [&] {
        for (std::size_t k = next++; k < count; k = next++) {
            try {
                const std::uint64_t value = cfg.values[k / cfg.trials];
                const std::size_t trial = k % cfg.trials;
                InstanceSpec spec;
                spec.n = cfg.vary == BenchAxis::n ? value : cfg.n;
                spec.T = cfg.vary == BenchAxis::T ? value : *cfg.T;
                spec.D = cfg.vary == BenchAxis::D ? value : *cfg.D;
                spec.C = *cfg.C;
                spec.seed = splitmix64(cfg.seed ^ splitmix64(value * 0x100000001b3ULL + trial));

                BenchRow &row = rows[k];
                row.algo = to_string(cfg.algo);
                row.n = spec.n;
                row.T = spec.T;
                row.D = spec.D;
                row.C = spec.C;
                row.seed = spec.seed;
                row.trial = trial;

                const RationalFunction h = random_instance(spec);
                AlgorithmBounds b;
                b.T = spec.T;
                b.D = spec.D;
                b.Dn = spec.D;
                b.C = spec.C;
                b.N = cfg.N;
                b.seed = spec.seed;
                b.max_iter = cfg.max_iter;

                CountingBlackBox bb(h);
                const auto start = Clock::now();
                try {
                    AlgorithmRun run = run_algorithm(cfg.algo, bb, b);
                    row.time_ms = elapsed_ms(start);
                    row.success = run.function == h;
                    row.mu = std::move(run.mu);
                } catch (const Error &e) {
                    if (e.code() != ErrorCode::MuSearchExhausted && e.code() != ErrorCode::ValidationFailed) {
                        throw;
                    }
                    row.time_ms = elapsed_ms(start);
                }
                row.queries = bb.queries();
                row.base_time_ms = base_case_ms(cfg.algo, h, b);
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure) {
                    failure = std::current_exception();
                }
                next = count;
            }
        }
    };

    const std::size_t jobs = std::max<std::size_t>(1, std::min(cfg.jobs, count));
    if (jobs == 1) {
        work();
    } else {
        std::vector<std::jthread> pool;
        for (std::size_t j = 0; j < jobs; ++j) {
            pool.emplace_back(work);
        }
    }
    if (failure) {
        std::rethrow_exception(failure);
    }
    return rows;
}

void write_bench_csv(std::ostream &out, const std::vector<BenchRow> &rows)
{
    out << kBenchHeader << '\n';
    for (const auto &r : rows) {
        out << r.algo << ',' << r.n << ',' << r.T << ',' << r.D << ',' << r.C << ',' << r.seed << ',' << r.trial
            << ',' << r.time_ms << ',' << r.queries << ',' << (r.mu ? r.mu->get_str() : std::string()) << ','
            << (r.success ? 1 : 0) << ',' << r.base_time_ms << '\n';
    }
}

} // namespace ratinterp
