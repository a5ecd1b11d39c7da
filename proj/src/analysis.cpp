#include "dcpso/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "dcpso/errors.hpp"

namespace dcpso {

double diversity(std::span<const std::span<const double>> positions) {
    if (positions.empty())
        throw ConfigError("diversity: need at least one position");
    const std::size_t dim = positions.front().size();
    for (const auto& p : positions)
        if (p.size() != dim)
            throw ConfigError("diversity: positions must share one dimension");

    std::vector<double> centroid(dim, 0.0);
    for (const auto& p : positions)
        for (std::size_t d = 0; d < dim; ++d)
            centroid[d] += p[d];
    for (double& c : centroid)
        c /= static_cast<double>(positions.size());

    double total = 0.0;
    for (const auto& p : positions) {
        double d2 = 0.0;
        for (std::size_t d = 0; d < dim; ++d) {
            const double diff = p[d] - centroid[d];
            d2 += diff * diff;
        }
        total += std::sqrt(d2);
    }
    return total / static_cast<double>(positions.size());
}

double diversity(const std::vector<std::vector<double>>& positions) {
    std::vector<std::span<const double>> views;
    views.reserve(positions.size());
    for (const auto& p : positions)
        views.emplace_back(p);
    return diversity(std::span<const std::span<const double>>(views));
}

char verdict_symbol(Verdict v) {
    switch (v) {
    case Verdict::Better: return '+';
    case Verdict::Equal: return '=';
    case Verdict::Worse: return '-';
    }
    throw InternalError("verdict_symbol: unknown verdict");
}

std::vector<double> rank_with_ties(std::span<const double> values) {
    const std::size_t n = values.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });

    std::vector<double> ranks(n, 0.0);
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i;
        while (j + 1 < n && values[order[j + 1]] == values[order[i]])
            ++j;
        const double shared = (static_cast<double>(i + 1) + static_cast<double>(j + 1)) / 2.0;
        for (std::size_t k = i; k <= j; ++k)
            ranks[order[k]] = shared;
        i = j + 1;
    }
    return ranks;
}

WilcoxonResult wilcoxon_signed_rank(std::span<const double> candidate,
                                    std::span<const double> reference, double alpha) {
    if (candidate.size() != reference.size())
        throw ConfigError("signed-rank test: samples must be paired (equal lengths)");
    if (!(alpha > 0.0 && alpha < 1.0))
        throw ConfigError("signed-rank test: alpha must lie strictly between 0 and 1");
    for (std::size_t i = 0; i < candidate.size(); ++i)
        if (!std::isfinite(candidate[i]) || !std::isfinite(reference[i]))
            throw ConfigError("signed-rank test: samples must be finite");

    // positive difference = candidate lower = candidate better (minimization)
    std::vector<double> diffs;
    diffs.reserve(candidate.size());
    for (std::size_t i = 0; i < candidate.size(); ++i) {
        const double d = reference[i] - candidate[i];
        if (d != 0.0)
            diffs.push_back(d);
    }

    WilcoxonResult res;
    res.n_effective = static_cast<int>(diffs.size());
    const std::size_t n = diffs.size();
    if (n == 0)
        return res; // all pairs tied: Equal, p = 1

    std::vector<double> mags(n);
    for (std::size_t i = 0; i < n; ++i)
        mags[i] = std::fabs(diffs[i]);
    const std::vector<double> ranks = rank_with_ties(mags);

    for (std::size_t i = 0; i < n; ++i) {
        if (diffs[i] > 0.0)
            res.w_plus += ranks[i];
        else
            res.w_minus += ranks[i];
    }

    if (n <= 20) {
        res.exact = true;
        // Doubled ranks are integers, so the exact null distribution of the
        // doubled rank sum comes from subset-sum counting.
        long long total = 0;
        std::vector<long long> doubled(n);
        for (std::size_t i = 0; i < n; ++i) {
            doubled[i] = std::llround(2.0 * ranks[i]);
            total += doubled[i];
        }
        std::vector<double> count(static_cast<std::size_t>(total) + 1, 0.0);
        count[0] = 1.0;
        for (const long long r : doubled)
            for (long long s = total; s >= r; --s)
                count[static_cast<std::size_t>(s)] += count[static_cast<std::size_t>(s - r)];

        const long long w2 = std::llround(2.0 * res.w_plus);
        double below = 0.0, above = 0.0;
        for (long long s = 0; s <= total; ++s) {
            const double c = count[static_cast<std::size_t>(s)];
            if (s <= w2)
                below += c;
            if (s >= w2)
                above += c;
        }
        const double everything = std::ldexp(1.0, static_cast<int>(n));
        res.p_value = std::min(1.0, 2.0 * std::min(below, above) / everything);
    } else {
        res.exact = false;
        // Tie-corrected normal approximation with continuity correction.
        const double nn = static_cast<double>(n);
        const double mu = nn * (nn + 1.0) / 4.0;
        std::vector<double> sorted = mags;
        std::sort(sorted.begin(), sorted.end());
        double tie_term = 0.0;
        for (std::size_t i = 0; i < n;) {
            std::size_t j = i;
            while (j + 1 < n && sorted[j + 1] == sorted[i])
                ++j;
            const double t = static_cast<double>(j - i + 1);
            tie_term += t * t * t - t;
            i = j + 1;
        }
        const double variance = nn * (nn + 1.0) * (2.0 * nn + 1.0) / 24.0 - tie_term / 48.0;
        const double delta = res.w_plus - mu;
        double z = 0.0;
        if (delta > 0.5)
            z = (delta - 0.5) / std::sqrt(variance);
        else if (delta < -0.5)
            z = (delta + 0.5) / std::sqrt(variance);
        res.p_value = std::min(1.0, std::erfc(std::fabs(z) / std::numbers::sqrt2));
    }

    if (n < 5) {
        // too few informative pairs to ever reach significance honestly
        res.inconclusive = true;
        res.verdict = Verdict::Equal;
        return res;
    }
    if (res.p_value < alpha)
        res.verdict = res.w_plus > res.w_minus ? Verdict::Better : Verdict::Worse;
    else
        res.verdict = Verdict::Equal;
    return res;
}

ComparisonReport aggregate_report(std::span<const TrialRecord> trials,
                                  const std::string& reference, double alpha) {
    if (trials.empty())
        throw ConfigError("report: no trials to aggregate");

    ComparisonReport rep;
    rep.reference = reference;
    rep.alpha = alpha;

    std::vector<std::string> functions;
    const auto index_of = [](std::vector<std::string>& pool, const std::string& key) {
        for (std::size_t i = 0; i < pool.size(); ++i)
            if (pool[i] == key)
                return i;
        pool.push_back(key);
        return pool.size() - 1;
    };

    // errors[function][algorithm] in trial order
    std::vector<std::vector<std::vector<double>>> errors;
    for (const TrialRecord& t : trials) {
        const std::size_t fi = index_of(functions, t.function);
        const std::size_t ai = index_of(rep.algorithms, t.algorithm);
        if (errors.size() < functions.size())
            errors.resize(functions.size());
        for (auto& row : errors)
            if (row.size() < rep.algorithms.size())
                row.resize(rep.algorithms.size());
        errors[fi][ai].push_back(t.final_error);
    }

    const std::size_t n_algo = rep.algorithms.size();
    const std::size_t per_cell = errors.front().front().size();
    if (per_cell == 0)
        throw ConfigError("report: empty cell in the trial grid");
    for (std::size_t fi = 0; fi < functions.size(); ++fi)
        for (std::size_t ai = 0; ai < n_algo; ++ai)
            if (errors[fi][ai].size() != per_cell)
                throw ConfigError("report: unbalanced trial grid at " + functions[fi] + " / " +
                                  rep.algorithms[ai]);
    rep.trials_per_cell = static_cast<int>(per_cell);

    std::size_t ref_idx = n_algo;
    for (std::size_t ai = 0; ai < n_algo; ++ai)
        if (rep.algorithms[ai] == reference)
            ref_idx = ai;
    if (ref_idx == n_algo)
        throw ConfigError("report: reference algorithm " + reference + " has no trials");

    rep.average_rank.assign(n_algo, 0.0);
    rep.best_mean_count.assign(n_algo, 0);
    rep.worst_mean_count.assign(n_algo, 0);
    rep.wins.assign(n_algo, 0);
    rep.ties.assign(n_algo, 0);
    rep.losses.assign(n_algo, 0);

    for (std::size_t fi = 0; fi < functions.size(); ++fi) {
        ReportRow row;
        row.function = functions[fi];
        std::vector<double> means(n_algo, 0.0);

        for (std::size_t ai = 0; ai < n_algo; ++ai) {
            const std::vector<double>& cell = errors[fi][ai];
            CellStats stats;
            stats.final_errors = cell;
            stats.mean = std::accumulate(cell.begin(), cell.end(), 0.0) /
                         static_cast<double>(cell.size());
            double ss = 0.0;
            for (double v : cell) {
                const double d = v - stats.mean;
                ss += d * d;
            }
            stats.stddev = cell.size() > 1
                               ? std::sqrt(ss / static_cast<double>(cell.size() - 1))
                               : 0.0;
            const auto [lo, hi] = std::minmax_element(cell.begin(), cell.end());
            stats.min = *lo;
            stats.max = *hi;
            means[ai] = stats.mean;
            row.cells.push_back(std::move(stats));
        }

        row.ranks = rank_with_ties(means);
        row.verdicts.assign(n_algo, Verdict::Equal);
        row.p_values.assign(n_algo, 1.0);
        for (std::size_t ai = 0; ai < n_algo; ++ai) {
            rep.average_rank[ai] += row.ranks[ai];
            if (ai == ref_idx)
                continue;
            const WilcoxonResult w =
                wilcoxon_signed_rank(errors[fi][ref_idx], errors[fi][ai], alpha);
            row.verdicts[ai] = w.verdict;
            row.p_values[ai] = w.p_value;
            switch (w.verdict) {
            case Verdict::Better: rep.wins[ai] += 1; break;
            case Verdict::Equal: rep.ties[ai] += 1; break;
            case Verdict::Worse: rep.losses[ai] += 1; break;
            }
        }

        const double best = *std::min_element(means.begin(), means.end());
        const double worst = *std::max_element(means.begin(), means.end());
        for (std::size_t ai = 0; ai < n_algo; ++ai) {
            if (means[ai] == best)
                rep.best_mean_count[ai] += 1;
            if (means[ai] == worst)
                rep.worst_mean_count[ai] += 1;
        }
        rep.rows.push_back(std::move(row));
    }

    for (double& r : rep.average_rank)
        r /= static_cast<double>(functions.size());
    return rep;
}

} // namespace dcpso
