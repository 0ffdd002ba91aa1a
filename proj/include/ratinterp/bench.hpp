#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "ratinterp/core.hpp"

namespace ratinterp {

enum class Algorithm { Urf1, Urf2, Urfp, Mrf1, Mrf2 };

/// "urf1", "urf2", "urfp", "mrf1", "mrf2"; nullopt for anything else.
std::optional<Algorithm> parse_algorithm(const std::string &name);
std::string to_string(Algorithm a);
bool is_univariate(Algorithm a);

/// Bounds handed to run_algorithm. Unset fields an algorithm needs throw
/// InvalidArgument.
struct AlgorithmBounds {
    std::optional<std::size_t> T;
    std::optional<Exponent> D;
    std::optional<Exponent> Dn;
    std::optional<Integer> C;
    std::uint64_t N = std::uint64_t{1} << 40;
    std::uint64_t seed = 0;
    std::uint64_t max_iter = 10'000'000;
    std::size_t validation_points = 0;
};

/// Which bounds an algorithm requires, as flag names ("T", "D", "Dn", "C").
std::vector<std::string> required_bounds(Algorithm a);

struct AlgorithmRun {
    RationalFunction function;
    Integer mu;
    std::size_t queries = 0;
};

AlgorithmRun run_algorithm(Algorithm a, BlackBox &bb, const AlgorithmBounds &bounds);

enum class BenchAxis { T, D, n };

struct BenchConfig {
    Algorithm algo = Algorithm::Urf2;
    BenchAxis vary = BenchAxis::T;
    std::vector<std::uint64_t> values;
    std::size_t n = 1;
    std::optional<std::size_t> T;
    std::optional<Exponent> D;
    std::optional<Integer> C;
    std::uint64_t N = std::uint64_t{1} << 40;
    std::uint64_t seed = 0;
    std::size_t trials = 5;
    std::size_t jobs = 1;
    std::uint64_t max_iter = 10'000'000;
};

/// One CSV row. mu is empty when the run failed.
struct BenchRow {
    std::string algo;
    std::size_t n = 0;
    std::size_t T = 0;
    Exponent D = 0;
    Integer C;
    std::uint64_t seed = 0;
    std::size_t trial = 0;
    std::int64_t time_ms = 0;
    std::size_t queries = 0;
    std::optional<Integer> mu;
    bool success = false;
    std::int64_t base_time_ms = 0;
};

inline constexpr const char *kBenchHeader =
    "algo,n,T,D,C,seed,trial,time_ms,queries,mu,success,base_time_ms";

/// Runs trials x values instances. Rows come back in (value, trial) order
/// whatever the number of worker threads. Throws InvalidArgument for an
/// inconsistent configuration.
std::vector<BenchRow> run_bench(const BenchConfig &config);

void write_bench_csv(std::ostream &out, const std::vector<BenchRow> &rows);

} // namespace ratinterp
