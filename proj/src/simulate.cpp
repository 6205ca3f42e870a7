#include "kappa/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "kappa/errors.hpp"
#include "kappa/estimator.hpp"
#include "kappa/inference.hpp"
#include "kappa/numeric.hpp"
#include "kappa/scores.hpp"

namespace kappa {

std::string generator_name(Generator g) {
    switch (g) {
        case Generator::ContinuousGaussian: return "continuousGaussian";
        case Generator::DiscreteUniformK: return "discreteUniformK";
        case Generator::MixedTied: return "mixedTied";
        case Generator::BivariateGaussianRho: return "bivariateGaussianRho";
    }
    return "unknown";
}

void validate(const SimConfig& cfg) {
    if (cfg.replicates < 100) throw InputError("SimConfig: replicates must be >= 100");
    if (cfg.nGrid.empty()) throw InputError("SimConfig: nGrid must be nonempty");
    for (std::size_t n : cfg.nGrid) {
        if (n < 5) throw InputError("SimConfig: every nGrid entry must be >= 5");
    }
    if (!(cfg.alpha > 0.0 && cfg.alpha < 1.0)) throw InputError("SimConfig: alpha must be in (0,1)");
    if (cfg.kLevels < 2) throw InputError("SimConfig: kLevels must be >= 2");
    if (!(std::fabs(cfg.rho) < 1.0)) throw InputError("SimConfig: |rho| must be < 1");
}

namespace detail {

void draw(const SimConfig& cfg, Generator g, std::size_t n, Rng& rng,
          std::vector<double>& x, std::vector<double>& y) {
    x.resize(n);
    y.resize(n);
    switch (g) {
        case Generator::ContinuousGaussian:
            for (std::size_t i = 0; i < n; ++i) x[i] = rng.normal();
            for (std::size_t i = 0; i < n; ++i) y[i] = rng.normal();
            break;
        case Generator::DiscreteUniformK:
            for (std::size_t i = 0; i < n; ++i)
                x[i] = static_cast<double>(rng.uniform_int(cfg.kLevels)) + 1.0;
            for (std::size_t i = 0; i < n; ++i)
                y[i] = static_cast<double>(rng.uniform_int(cfg.kLevels)) + 1.0;
            break;
        case Generator::MixedTied:
            // 50/50 mixture of N(0,1) and uniform on {-1, 0, 1}, per margin.
            for (std::size_t i = 0; i < n; ++i) {
                x[i] = rng.uniform() < 0.5 ? rng.normal()
                                           : static_cast<double>(rng.uniform_int(3)) - 1.0;
            }
            for (std::size_t i = 0; i < n; ++i) {
                y[i] = rng.uniform() < 0.5 ? rng.normal()
                                           : static_cast<double>(rng.uniform_int(3)) - 1.0;
            }
            break;
        case Generator::BivariateGaussianRho: {
            double s = std::sqrt(1.0 - cfg.rho * cfg.rho);
            for (std::size_t i = 0; i < n; ++i) x[i] = rng.normal();
            for (std::size_t i = 0; i < n; ++i) y[i] = cfg.rho * x[i] + s * rng.normal();
            break;
        }
    }
}

namespace {

// Row/column means and grand mean of the score matrix from one sort:
// with cle_k = #{l : v_l <= v_k} and clt_k = #{l : v_l < v_k},
//   rowSum_k = 2 cle_k - n - 1,   colSum_k = n - 1 - 2 clt_k.
struct MarginSums {
    std::vector<double> rowMean, colMean;
    double grand = 0.0;
};

void margin_sums(const std::vector<double>& v, MarginSums& m) {
    std::size_t n = v.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return v[a] < v[b]; });

    m.rowMean.resize(n);
    m.colMean.resize(n);
    double nm1 = static_cast<double>(n - 1);
    KahanSum total;
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i;
        while (j < n && v[order[j]] == v[order[i]]) ++j;  // tie group [i, j)
        double cle = static_cast<double>(j);
        double clt = static_cast<double>(i);
        double rowSum = 2.0 * cle - static_cast<double>(n) - 1.0;
        double colSum = static_cast<double>(n) - 1.0 - 2.0 * clt;
        for (std::size_t k = i; k < j; ++k) {
            m.rowMean[order[k]] = rowSum / nm1;
            m.colMean[order[k]] = colSum / nm1;
            total.add(rowSum);
        }
        i = j;
    }
    m.grand = total.value() / (static_cast<double>(n) * nm1);
}

}  // namespace

FastTau fast_tau(const std::vector<double>& x, const std::vector<double>& y) {
    validate_observations(x, "x");
    validate_observations(y, "y");
    if (x.size() != y.size()) throw InputError("fast_tau: margins differ in length");
    std::size_t n = x.size();

    MarginSums mx, my;
    margin_sums(x, mx);
    margin_sums(y, my);

    // Plain accumulation within a row, compensated across rows.
    KahanSum num, sx, sy;
    long long tauANum = 0;
    for (std::size_t k = 0; k < n; ++k) {
        double rowNum = 0.0, rowSx = 0.0, rowSy = 0.0;
        double rmxk = mx.rowMean[k], cmxk = mx.colMean[k];
        double rmyk = my.rowMean[k], cmyk = my.colMean[k];
        for (std::size_t l = k + 1; l < n; ++l) {
            double cx1 = x[k] >= x[l] ? 1.0 : -1.0;
            double cx2 = x[l] >= x[k] ? 1.0 : -1.0;
            double cy1 = y[k] >= y[l] ? 1.0 : -1.0;
            double cy2 = y[l] >= y[k] ? 1.0 : -1.0;
            double kx1 = cx1 - rmxk - mx.colMean[l] + mx.grand;
            double kx2 = cx2 - mx.rowMean[l] - cmxk + mx.grand;
            double ky1 = cy1 - rmyk - my.colMean[l] + my.grand;
            double ky2 = cy2 - my.rowMean[l] - cmyk + my.grand;
            rowNum += kx1 * ky1 + kx2 * ky2;
            rowSx += kx1 * kx1 + kx2 * kx2;
            rowSy += ky1 * ky1 + ky2 * ky2;
            if (x[k] != x[l] && y[k] != y[l]) {
                tauANum += (x[k] > x[l]) == (y[k] > y[l]) ? 1 : -1;
            }
        }
        num.add(rowNum);
        sx.add(rowSx);
        sy.add(rowSy);
    }

    double pairs = static_cast<double>(n) * static_cast<double>(n - 1);
    FastTau t;
    t.tauCov = num.value() / pairs;
    t.sigmaX2 = sx.value() / pairs;
    t.sigmaY2 = sy.value() / pairs;
    if (sx.value() == 0.0) throw DegenerateMarginError("x");
    if (sy.value() == 0.0) throw DegenerateMarginError("y");
    t.tauCorr = num.value() / std::sqrt(sx.value() * sy.value());
    t.tauA = 2.0 * static_cast<double>(tauANum) / pairs;
    return t;
}

}  // namespace detail

namespace {

struct SampleStats {
    double mean = 0.0;
    double variance = 0.0;  // with ddof 1
};

SampleStats mean_variance(const std::vector<double>& v) {
    SampleStats s;
    KahanSum m;
    for (double t : v) m.add(t);
    s.mean = m.value() / static_cast<double>(v.size());
    KahanSum q;
    for (double t : v) q.add((t - s.mean) * (t - s.mean));
    s.variance = v.size() > 1 ? q.value() / static_cast<double>(v.size() - 1) : 0.0;
    return s;
}

double median_of(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    std::size_t n = v.size();
    if (n == 0) return 0.0;
    return n % 2 == 1 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

// One replicate batch: tauCorr, tauCov, tauA per replicate under (tag, n).
struct ReplicateDraws {
    std::vector<double> tauCorr, tauCov, tauA;
};

ReplicateDraws run_replicates(const SimConfig& cfg, Generator g, const char* tag,
                              std::size_t n, std::size_t replicates) {
    ReplicateDraws out;
    out.tauCorr.resize(replicates);
    out.tauCov.resize(replicates);
    out.tauA.resize(replicates);
    std::vector<double> x, y;
    std::string streamTag = std::string(tag) + "/" + generator_name(g);
    for (std::size_t r = 0; r < replicates; ++r) {
        Rng rng(substream_seed(cfg.seed, streamTag, n, r));
        detail::draw(cfg, g, n, rng, x, y);
        detail::FastTau t = detail::fast_tau(x, y);
        out.tauCorr[r] = t.tauCorr;
        out.tauCov[r] = t.tauCov;
        out.tauA[r] = t.tauA;
    }
    return out;
}

// cHat = n Var(sample) / (1 - tau^2), with a 10-batch standard error.
CalibrationRow chat_row(const std::string& name, std::size_t n,
                        const std::vector<double>& sample, double tauPop) {
    CalibrationRow row;
    row.generator = name;
    row.n = n;
    double scale = static_cast<double>(n) / (1.0 - tauPop * tauPop);
    row.cHat = scale * mean_variance(sample).variance;

    std::size_t batches = 10;
    std::size_t per = sample.size() / batches;
    std::vector<double> batchC;
    batchC.reserve(batches);
    for (std::size_t b = 0; b < batches; ++b) {
        std::vector<double> part(sample.begin() + b * per, sample.begin() + (b + 1) * per);
        batchC.push_back(scale * mean_variance(part).variance);
    }
    row.cHatStdErr = std::sqrt(mean_variance(batchC).variance / static_cast<double>(batches));
    return row;
}

// Plug-in for the population tauCorr of the configured alternative: mean of a
// few large-sample estimates, with its Monte Carlo standard error.
void population_plugin(const SimConfig& cfg, CalibrationReport& report) {
    const std::size_t plugN = 10000, plugReps = 5;
    std::vector<double> vals(plugReps);
    std::vector<double> x, y;
    for (std::size_t r = 0; r < plugReps; ++r) {
        Rng rng(substream_seed(cfg.seed, "population/bivariateGaussianRho", plugN, r));
        detail::draw(cfg, cfg.generator, plugN, rng, x, y);
        vals[r] = detail::fast_tau(x, y).tauCorr;
    }
    SampleStats s = mean_variance(vals);
    report.populationTau = s.mean;
    report.populationTauStdErr = std::sqrt(s.variance / static_cast<double>(plugReps));
}

double ols_slope(const std::vector<double>& xs, const std::vector<double>& ys) {
    double n = static_cast<double>(xs.size());
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        mx += xs[i];
        my += ys[i];
    }
    mx /= n;
    my /= n;
    double sxy = 0.0, sxx = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sxy += (xs[i] - mx) * (ys[i] - my);
        sxx += (xs[i] - mx) * (xs[i] - mx);
    }
    return sxx > 0.0 ? sxy / sxx : 0.0;
}

}  // namespace

CalibrationReport calibrate_c(const SimConfig& cfg) {
    validate(cfg);
    CalibrationReport report;
    report.config = cfg;

    std::vector<Generator> families = {Generator::ContinuousGaussian, Generator::DiscreteUniformK,
                                       Generator::MixedTied};
    bool withAlternative = cfg.generator == Generator::BivariateGaussianRho;
    if (withAlternative) {
        population_plugin(cfg, report);
        families.push_back(Generator::BivariateGaussianRho);
    }

    std::vector<double> familySummary;  // H0 families only, for the spread
    for (Generator g : families) {
        double tauPop =
            g == Generator::BivariateGaussianRho ? report.populationTau : 0.0;
        KahanSum sumC;
        for (std::size_t n : cfg.nGrid) {
            ReplicateDraws draws = run_replicates(cfg, g, "calibrate", n, cfg.replicates);
            CalibrationRow row = chat_row(generator_name(g), n, draws.tauCorr, tauPop);
            report.perDistribution.push_back(row);
            sumC.add(row.cHat);
            report.kendallBaseline.push_back(
                chat_row(generator_name(g), n, draws.tauA, tauPop));
        }
        double familyC = sumC.value() / static_cast<double>(cfg.nGrid.size());
        if (g == Generator::ContinuousGaussian) report.cHat = familyC;
        if (g != Generator::BivariateGaussianRho) familySummary.push_back(familyC);
    }

    // Standard error of the headline cHat: from its per-n rows.
    {
        KahanSum se2;
        std::size_t rows = 0;
        for (const CalibrationRow& row : report.perDistribution) {
            if (row.generator == generator_name(Generator::ContinuousGaussian)) {
                se2.add(row.cHatStdErr * row.cHatStdErr);
                ++rows;
            }
        }
        report.cHatStdErr = std::sqrt(se2.value()) / static_cast<double>(rows);
    }

    std::vector<double> sorted = familySummary;
    std::sort(sorted.begin(), sorted.end());
    double median = sorted[sorted.size() / 2];
    for (double c : familySummary) report.spread = std::max(report.spread, std::fabs(c - median));
    report.spreadFlagged = report.spread > 0.05;
    return report;
}

CalibrationReport size_power_study(const SimConfig& cfg) {
    validate(cfg);
    CalibrationReport report;
    report.config = cfg;

    bool withAlternative = cfg.generator == Generator::BivariateGaussianRho;
    if (withAlternative) population_plugin(cfg, report);

    std::size_t nMax = *std::max_element(cfg.nGrid.begin(), cfg.nGrid.end());

    for (std::size_t n : cfg.nGrid) {
        // c calibrated at this n on an independent substream.
        ReplicateDraws cal =
            run_replicates(cfg, Generator::ContinuousGaussian, "size-calibrate", n,
                           cfg.replicates);
        double cHatN = static_cast<double>(n) * mean_variance(cal.tauCorr).variance;
        VarianceModel vm{cHatN, VarianceDenominator::N};

        ReplicateDraws h0 =
            run_replicates(cfg, Generator::ContinuousGaussian, "size-h0", n, cfg.replicates);

        std::size_t rejW = 0, rejL = 0, rejQ = 0;
        std::vector<double> gapScaled(cfg.replicates), gapPrinted(cfg.replicates);
        for (std::size_t r = 0; r < cfg.replicates; ++r) {
            double tau = h0.tauCorr[r];
            TestResult w = wald_test(tau, n, vm);
            TestResult l = lr_test(tau, n);
            TestResult q = quasi_lr_test(tau, n, vm);
            rejW += w.pValue < cfg.alpha;
            rejL += l.pValue < cfg.alpha;
            rejQ += q.pValue < cfg.alpha;
            gapScaled[r] = std::fabs(w.pValue - q.pValue);
            gapPrinted[r] = std::fabs(w.pValue - l.pValue);
        }
        double r = static_cast<double>(cfg.replicates);
        report.typeIError.push_back({"wald", n, static_cast<double>(rejW) / r, cHatN});
        report.typeIError.push_back({"lrt", n, static_cast<double>(rejL) / r, 0.0});
        report.typeIError.push_back({"lrtScaled", n, static_cast<double>(rejQ) / r, cHatN});
        report.pValueGaps.push_back({n, median_of(gapScaled), median_of(gapPrinted)});

        SampleStats corrStats = mean_variance(h0.tauCorr);
        SampleStats covStats = mean_variance(h0.tauCov);
        report.biasTable.push_back({"tauCorr", n, corrStats.mean, 0.0, corrStats.mean,
                                    std::sqrt(corrStats.variance / r)});
        report.biasTable.push_back({"tauCov", n, covStats.mean, 0.0, covStats.mean,
                                    std::sqrt(covStats.variance / r)});

        if (n == nMax) {
            // KS distance of tauHat / se(0) against the standard normal.
            double se = standard_error(0.0, n, vm);
            std::vector<double> z = h0.tauCorr;
            for (double& v : z) v /= se;
            std::sort(z.begin(), z.end());
            double ks = 0.0;
            for (std::size_t i = 0; i < z.size(); ++i) {
                double f = normal_cdf(z[i]);
                double lo = static_cast<double>(i) / r;
                double hi = static_cast<double>(i + 1) / r;
                ks = std::max({ks, std::fabs(f - lo), std::fabs(f - hi)});
            }
            report.normalityStat = ks;
            report.normalityN = n;
        }

        if (withAlternative) {
            ReplicateDraws alt = run_replicates(cfg, cfg.generator, "power", n, cfg.replicates);
            std::size_t rejAltW = 0, rejAltQ = 0;
            for (std::size_t i = 0; i < cfg.replicates; ++i) {
                double tau = alt.tauCorr[i];
                rejAltW += wald_test(tau, n, vm).pValue < cfg.alpha;
                rejAltQ += quasi_lr_test(tau, n, vm).pValue < cfg.alpha;
            }
            report.power.push_back({"wald", n, static_cast<double>(rejAltW) / r, cHatN});
            report.power.push_back({"lrtScaled", n, static_cast<double>(rejAltQ) / r, cHatN});
            SampleStats altStats = mean_variance(alt.tauCorr);
            report.biasTable.push_back({"tauCorr", n, altStats.mean, report.populationTau,
                                        altStats.mean - report.populationTau,
                                        std::sqrt(altStats.variance / r)});
        }
    }
    return report;
}

CalibrationReport concentration_check(const SimConfig& cfg) {
    validate(cfg);
    CalibrationReport report;
    report.config = cfg;

    double tauPop = 0.0;
    if (cfg.generator == Generator::BivariateGaussianRho) {
        population_plugin(cfg, report);
        tauPop = report.populationTau;
    }

    const double epsilons[] = {0.05, 0.1, 0.2};
    std::vector<std::vector<double>> logExceedance(3);
    std::vector<double> ns;
    for (std::size_t n : cfg.nGrid) {
        ReplicateDraws draws = run_replicates(cfg, cfg.generator, "concentration", n,
                                              cfg.replicates);
        ns.push_back(static_cast<double>(n));
        for (int e = 0; e < 3; ++e) {
            std::size_t count = 0;
            for (double tau : draws.tauCorr) {
                if (std::fabs(tau - tauPop) > epsilons[e]) ++count;
            }
            double r = static_cast<double>(cfg.replicates);
            report.concentrationTable.push_back(
                {epsilons[e], n, count, static_cast<double>(count) / r});
            // 0.5-count floor keeps the regression defined when counts hit 0.
            logExceedance[e].push_back(
                std::log(std::max(static_cast<double>(count), 0.5) / r));
        }
    }
    for (int e = 0; e < 3; ++e) {
        report.concentrationSlopes.emplace_back(epsilons[e], ols_slope(ns, logExceedance[e]));
    }
    return report;
}

EnumerationResult exhaustive_unbiasedness(const JointPmf& pmf, std::size_t n) {
    std::size_t sx = pmf.xValues.size(), sy = pmf.yValues.size();
    if (sx == 0 || sy == 0 || sx > 3 || sy > 3) {
        throw InputError("exhaustive_unbiasedness: support must be between 1x1 and 3x3");
    }
    if (pmf.prob.size() != sx * sy) {
        throw InputError("exhaustive_unbiasedness: prob must have xValues x yValues entries");
    }
    if (n < 2 || n > 4) throw InputError("exhaustive_unbiasedness: n must be in {2, 3, 4}");
    KahanSum total;
    for (double p : pmf.prob) {
        if (!(p >= 0.0)) throw InputError("exhaustive_unbiasedness: probabilities must be >= 0");
        total.add(p);
    }
    if (std::fabs(total.value() - 1.0) > 1e-9) {
        throw InputError("exhaustive_unbiasedness: probabilities must sum to 1");
    }

    std::size_t states = sx * sy;
    std::vector<std::size_t> digits(n, 0);
    ObservationVector x(n), y(n);
    KahanSum meanSum, popSum;
    while (true) {
        double p = 1.0;
        for (std::size_t i = 0; i < n; ++i) p *= pmf.prob[digits[i]];
        if (p > 0.0) {
            for (std::size_t i = 0; i < n; ++i) {
                x[i] = pmf.xValues[digits[i] / sy];
                y[i] = pmf.yValues[digits[i] % sy];
            }
            CentredScoreMatrix kx = centre(score_matrix(x));
            CentredScoreMatrix ky = centre(score_matrix(y));
            meanSum.add(p * kappa_cov(kernel_product(kx, ky)));
            popSum.add(p * kx(0, 1) * ky(0, 1));
        }
        // odometer over all states^n outcomes
        std::size_t i = 0;
        while (i < n && ++digits[i] == states) digits[i++] = 0;
        if (i == n) break;
    }
    return {meanSum.value(), popSum.value()};
}

}  // namespace kappa
