#include <CLI11.hpp>

#include <cmath>
#include <cstdint>
#include <iostream>
#include <limits>
#include <string>
#include <vector>

#include "kappa/dataset.hpp"
#include "kappa/errors.hpp"
#include "kappa/estimator.hpp"
#include "kappa/inference.hpp"
#include "kappa/multivariate.hpp"
#include "kappa/regression.hpp"
#include "kappa/report.hpp"
#include "kappa/sim_config.hpp"
#include "kappa/simulate.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInput = 2;
constexpr int kExitNumerical = 3;

struct GlobalOptions {
    std::string format = "table";
    double c = 0.4456;
    std::string denominator = "n";
    std::uint64_t seed = 0;
    bool seedGiven = false;
    std::string delimiter = ",";
    bool noHeader = false;
    std::string naPolicy = "reject";

    kappa::VarianceModel vm() const {
        kappa::VarianceModel m;
        m.c = c;
        m.denominator = denominator == "n" ? kappa::VarianceDenominator::N
                                           : kappa::VarianceDenominator::N_minus_2;
        return m;
    }
    kappa::CsvOptions csv() const {
        kappa::CsvOptions o;
        o.delimiter = delimiter[0];
        o.hasHeader = !noHeader;
        o.naPolicy = naPolicy == "reject" ? kappa::NaPolicy::Reject : kappa::NaPolicy::DropRow;
        return o;
    }
};

// Tests at |tauHat| = 1 get the boundary policy instead of a domain error:
// statistic capped at the largest finite double, p = 0, flag set.
bool at_boundary(double tauHat) { return std::fabs(tauHat) >= 1.0 - 1e-12; }

kappa::TestResult boundary_result(kappa::TestFamily family, double tauHat, std::size_t n) {
    kappa::TestResult r;
    r.family = family;
    r.tauHat = tauHat;
    r.n = n;
    r.statistic = std::numeric_limits<double>::max();
    r.pValue = 0.0;
    r.boundary = true;
    return r;
}

int run_corr(const GlobalOptions& g, const std::string& file, std::string colX,
             std::string colY) {
    kappa::Dataset d = kappa::load_csv(file, g.csv());
    if (d.cols() < 2) throw kappa::InputError(file + ": need at least 2 columns");
    if (colX.empty()) colX = d.names[0];
    if (colY.empty()) colY = d.names[1];

    kappa::CorrReport r;
    r.source = file;
    r.colX = colX;
    r.colY = colY;
    r.vm = g.vm();
    const kappa::ObservationVector& x = kappa::column(d, colX);
    const kappa::ObservationVector& y = kappa::column(d, colY);
    {
        kappa::CentredScoreMatrix kx = kappa::centre(kappa::score_matrix(x));
        kappa::CentredScoreMatrix ky = kappa::centre(kappa::score_matrix(y));
        r.estimate = kappa::kappa_corr(kx, ky, colX.c_str(), colY.c_str());
    }
    r.se = kappa::standard_error(r.estimate.tauCorr, r.estimate.n, r.vm);
    if (at_boundary(r.estimate.tauCorr)) {
        r.wald = boundary_result(kappa::TestFamily::Wald, r.estimate.tauCorr, r.estimate.n);
        r.lrt = boundary_result(kappa::TestFamily::LRT, r.estimate.tauCorr, r.estimate.n);
        r.lrtScaled = r.lrt;
    } else {
        r.wald = kappa::wald_test(r.estimate.tauCorr, r.estimate.n, r.vm);
        r.lrt = kappa::lr_test(r.estimate.tauCorr, r.estimate.n);
        r.lrtScaled = kappa::quasi_lr_test(r.estimate.tauCorr, r.estimate.n, r.vm);
    }
    if (g.format == "json") {
        std::cout << kappa::corr_report_json(r).dump() << "\n";
    } else {
        std::cout << kappa::corr_report_table(r);
    }
    return kExitOk;
}

int run_matrix(const GlobalOptions& g, const std::string& file) {
    kappa::Dataset d = kappa::load_csv(file, g.csv());
    if (d.cols() < 2) throw kappa::InputError(file + ": need at least 2 columns");

    kappa::MatrixReport r;
    r.source = file;
    r.names = d.names;
    r.vm = g.vm();
    r.matrix = kappa::kappa_matrix(d.columns, d.names);
    r.tests = kappa::matrix_tests(r.matrix, r.matrix.n, r.vm);
    if (g.format == "json") {
        std::cout << kappa::matrix_report_json(r).dump() << "\n";
    } else {
        std::cout << kappa::matrix_report_table(r);
    }
    return kExitOk;
}

int run_fit(const GlobalOptions& g, const std::string& file, const std::string& response,
            const std::vector<std::string>& predictors, double tol, std::size_t maxIter) {
    if (predictors.empty()) throw kappa::InputError("fit: --predictors must be nonempty");
    kappa::Dataset d = kappa::load_csv(file, g.csv());

    kappa::FitReport r;
    r.source = file;
    r.response = response;
    r.predictors = predictors;

    const kappa::ObservationVector& y = kappa::column(d, response);
    std::size_t n = d.rows();
    std::size_t p = predictors.size();
    std::vector<double> X(n * p);
    for (std::size_t j = 0; j < p; ++j) {
        const kappa::ObservationVector& col = kappa::column(d, predictors[j]);
        for (std::size_t i = 0; i < n; ++i) X[i * p + j] = col[i];
    }
    r.design = kappa::build_design(X, n, p, y);
    kappa::FitOptions options;
    options.tol = tol;
    options.maxIter = maxIter;
    r.fit = kappa::fit(r.design, options);
    r.residual = kappa::estimating_equation_residual(r.design, r.fit.theta);

    if (g.format == "json") {
        std::cout << kappa::fit_report_json(r).dump() << "\n";
    } else {
        std::cout << kappa::fit_report_table(r);
    }
    if (!r.fit.converged) {
        std::cerr << "fit did not converge in " << r.fit.iterations
                  << " iterations (residual norm " << r.fit.residualNorm << ")\n";
        return kExitNumerical;
    }
    return kExitOk;
}

int run_simulate(const GlobalOptions& g, const std::string& configPath) {
    kappa::SimStudy s = kappa::load_sim_config(configPath);
    if (g.seedGiven) s.config.seed = g.seed;

    kappa::CalibrationReport report;
    if (s.study == "calibrate") {
        report = kappa::calibrate_c(s.config);
    } else if (s.study == "size-power") {
        report = kappa::size_power_study(s.config);
    } else {
        report = kappa::concentration_check(s.config);
    }
    if (g.format == "json") {
        std::cout << kappa::simulate_report_json(s.study, report).dump() << "\n";
    } else {
        std::cout << kappa::simulate_report_table(s.study, report);
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Kemeny kappa-correlation estimator, tests, and regression"};
    app.require_subcommand(1);

    GlobalOptions g;
    app.add_option("--format", g.format, "output format")
        ->check(CLI::IsMember({"table", "json"}));
    app.add_option("--c", g.c, "variance calibration constant (default 0.4456)");
    app.add_option("--variance-denominator", g.denominator, "variance denominator")
        ->check(CLI::IsMember({"n", "n-2"}));
    auto* seedOpt = app.add_option("--seed", g.seed, "seed for simulate (overrides config)");
    app.add_option("--delimiter", g.delimiter, "CSV delimiter (single character)")
        ->check(CLI::Validator(
            [](std::string& s) {
                return s.size() == 1 ? std::string() : std::string("must be one character");
            },
            "CHAR"));
    app.add_flag("--no-header", g.noHeader, "CSV has no header row; names col1..colP");
    app.add_option("--na-policy", g.naPolicy, "missing-value policy")
        ->check(CLI::IsMember({"reject", "drop-row"}));

    std::string corrFile, colX, colY;
    CLI::App* corr = app.add_subcommand("corr", "correlation of two columns with tests");
    corr->add_option("file", corrFile, "CSV input")->required();
    corr->add_option("--col-x", colX, "first column (default: first in file)");
    corr->add_option("--col-y", colY, "second column (default: second in file)");

    std::string matrixFile;
    CLI::App* matrix = app.add_subcommand("matrix", "pairwise correlation matrix with tests");
    matrix->add_option("file", matrixFile, "CSV input")->required();

    std::string fitFile, response;
    std::vector<std::string> predictors;
    double tol = 1e-8;
    std::size_t maxIter = 100;
    CLI::App* fit = app.add_subcommand("fit", "pairwise-contrast regression");
    fit->add_option("file", fitFile, "CSV input")->required();
    fit->add_option("--response", response, "response column")->required();
    fit->add_option("--predictors", predictors, "predictor columns (comma separated)")
        ->required()
        ->delimiter(',');
    fit->add_option("--tol", tol, "residual-norm tolerance");
    fit->add_option("--max-iter", maxIter, "iteration cap");

    std::string simConfig;
    CLI::App* simulate = app.add_subcommand("simulate", "Monte Carlo studies from a config file");
    simulate->add_option("config", simConfig, "flat key = value config file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitInput;
    }
    g.seedGiven = seedOpt->count() > 0;

    try {
        if (corr->parsed()) return run_corr(g, corrFile, colX, colY);
        if (matrix->parsed()) return run_matrix(g, matrixFile);
        if (fit->parsed()) return run_fit(g, fitFile, response, predictors, tol, maxIter);
        return run_simulate(g, simConfig);
    } catch (const kappa::InputError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kExitInput;
    } catch (const kappa::NumericalError& e) {
        std::cerr << "numerical error: " << e.what() << "\n";
        return kExitNumerical;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNumerical;
    }
}
