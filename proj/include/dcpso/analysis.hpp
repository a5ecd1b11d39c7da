#pragma once

#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <vector>

namespace dcpso {

/// One recorded iteration of an optimizer run.
struct IterationSample {
    long long fes = 0;    ///< evaluations consumed so far
    double error = 0.0;   ///< best-so-far fitness minus f_star
    double diversity = 0.0;
    int non_g_steps = 0;  ///< channel activity during this iteration
    int g_steps = 0;
    int pdg_events = 0;   ///< direction refreshes during this iteration
    int cap_non_g = 0;    ///< per-direction channel caps at iteration start
    int cap_g = 0;
};

/// Full trace of a single optimizer trial.
struct TrialRecord {
    std::string algorithm;
    std::string function;
    std::uint64_t seed = 0;
    std::vector<IterationSample> samples; ///< first entry is the post-init state
    double final_error = std::numeric_limits<double>::infinity();
    long long evaluations = 0;
    long long nonfinite_rejections = 0;
};

/// Mean Euclidean distance of the positions to their centroid.
double diversity(std::span<const std::span<const double>> positions);
double diversity(const std::vector<std::vector<double>>& positions);

enum class Verdict { Better, Equal, Worse };

/// '+', '=' or '-': the sign convention of comparison tables.
char verdict_symbol(Verdict v);

struct WilcoxonResult {
    Verdict verdict = Verdict::Equal;
    double w_plus = 0.0;  ///< rank sum of pairs where reference > candidate
    double w_minus = 0.0;
    double p_value = 1.0; ///< two-sided
    int n_effective = 0;  ///< pairs left after dropping zero differences
    bool exact = true;    ///< exact null distribution vs normal approximation
    bool inconclusive = false; ///< fewer than 5 usable pairs
};

/// Paired Wilcoxon signed-rank test on minimization results: verdict
/// Better means the candidate sample is significantly lower than the
/// reference sample at level alpha. Zero differences are dropped, tied
/// magnitudes get average ranks, the null distribution is exact up to 20
/// usable pairs and a tie-corrected normal approximation with continuity
/// correction beyond that.
WilcoxonResult wilcoxon_signed_rank(std::span<const double> candidate,
                                    std::span<const double> reference, double alpha);

/// Ascending ranks (1-based) with ties sharing the average rank.
std::vector<double> rank_with_ties(std::span<const double> values);

/// Per-(function, algorithm) cell of a comparison report.
struct CellStats {
    double mean = 0.0;
    double stddev = 0.0; ///< sample standard deviation
    double min = 0.0;
    double max = 0.0;
    std::vector<double> final_errors; ///< in trial order
};

/// One function row of a comparison report. Vectors are indexed by the
/// report's algorithm order. The reference algorithm's verdict slot holds
/// Verdict::Equal with p_value 1 (it is not compared against itself).
struct ReportRow {
    std::string function;
    std::vector<CellStats> cells;
    std::vector<double> ranks;   ///< of the means, ties averaged
    std::vector<Verdict> verdicts; ///< reference vs algorithm
    std::vector<double> p_values;
};

struct ComparisonReport {
    std::vector<std::string> algorithms; ///< first-appearance order
    std::string reference;
    double alpha = 0.05;
    int trials_per_cell = 0;
    std::vector<ReportRow> rows;         ///< one per function
    std::vector<double> average_rank;    ///< per algorithm, across functions
    std::vector<int> best_mean_count;    ///< functions where the algorithm has the lowest mean
    std::vector<int> worst_mean_count;
    std::vector<int> wins;   ///< functions where reference beats the algorithm ('+')
    std::vector<int> ties;
    std::vector<int> losses;
};

/// Aggregate trial records into a comparison table: per-function means,
/// sample deviations, mean ranks and signed-rank verdicts of the reference
/// algorithm against every other. Requires a balanced grid: every
/// (function, algorithm) cell present with the same trial count.
ComparisonReport aggregate_report(std::span<const TrialRecord> trials,
                                  const std::string& reference, double alpha);

} // namespace dcpso
