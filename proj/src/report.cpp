#include "kappa/report.hpp"

#include <cinttypes>
#include <cstdio>
#include <sstream>

namespace kappa {

namespace {

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void escape_into(const std::string& s, std::string& out) {
    out.push_back('"');
    for (char c : s) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\r': out += "\\r"; break;
            case '\t': out += "\\t"; break;
            default:
                if (static_cast<unsigned char>(c) < 0x20) {
                    char buf[8];
                    std::snprintf(buf, sizeof buf, "\\u%04x", c);
                    out += buf;
                } else {
                    out.push_back(c);
                }
        }
    }
    out.push_back('"');
}

const char* family_name(TestFamily f) { return f == TestFamily::Wald ? "wald" : "lrt"; }

Json test_json(const TestResult& t) {
    Json o = Json::object();
    o.add("family", Json::text(family_name(t.family)));
    o.add("statistic", Json::number(t.statistic));
    o.add("df", Json::integer(t.df));
    o.add("pValue", Json::number(t.pValue));
    if (t.boundary) o.add("boundary", Json::boolean(true));
    return o;
}

Json vector_json(const std::vector<double>& v) {
    Json a = Json::array();
    for (double x : v) a.push(Json::number(x));
    return a;
}

Json matrix_json(const SquareMatrix<double>& m) {
    Json rows = Json::array();
    for (std::size_t i = 0; i < m.dim(); ++i) {
        Json row = Json::array();
        for (std::size_t j = 0; j < m.dim(); ++j) row.push(Json::number(m(i, j)));
        rows.push(std::move(row));
    }
    return rows;
}

const char* denominator_name(const VarianceModel& vm) {
    return vm.denominator == VarianceDenominator::N ? "n" : "n-2";
}

}  // namespace

Json& Json::add(const std::string& key, Json v) {
    std::get<Object>(value_).members.emplace_back(key, std::move(v));
    return *this;
}

Json& Json::push(Json v) {
    std::get<Array>(value_).elements.push_back(std::move(v));
    return *this;
}

void Json::write(std::string& out) const {
    if (const double* d = std::get_if<double>(&value_)) {
        out += format_double(*d);
    } else if (const long long* i = std::get_if<long long>(&value_)) {
        char buf[24];
        std::snprintf(buf, sizeof buf, "%lld", *i);
        out += buf;
    } else if (const bool* b = std::get_if<bool>(&value_)) {
        out += *b ? "true" : "false";
    } else if (const std::string* s = std::get_if<std::string>(&value_)) {
        escape_into(*s, out);
    } else if (const Object* o = std::get_if<Object>(&value_)) {
        out.push_back('{');
        bool first = true;
        for (const auto& [key, val] : o->members) {
            if (!first) out.push_back(',');
            first = false;
            escape_into(key, out);
            out.push_back(':');
            val.write(out);
        }
        out.push_back('}');
    } else {
        const Array& a = std::get<Array>(value_);
        out.push_back('[');
        for (std::size_t i = 0; i < a.elements.size(); ++i) {
            if (i) out.push_back(',');
            a.elements[i].write(out);
        }
        out.push_back(']');
    }
}

std::string Json::dump() const {
    std::string out;
    write(out);
    return out;
}

Json corr_report_json(const CorrReport& r) {
    Json o = Json::object();
    o.add("command", Json::text("corr"));
    o.add("source", Json::text(r.source));
    o.add("colX", Json::text(r.colX));
    o.add("colY", Json::text(r.colY));
    o.add("n", Json::integer(static_cast<long long>(r.estimate.n)));
    o.add("tauCorr", Json::number(r.estimate.tauCorr));
    o.add("tauCov", Json::number(r.estimate.tauCov));
    o.add("sigmaX2", Json::number(r.estimate.sigmaX2));
    o.add("sigmaY2", Json::number(r.estimate.sigmaY2));
    o.add("gamma3", Json::number(r.estimate.gamma3));
    o.add("gamma4", Json::number(r.estimate.gamma4));
    o.add("c", Json::number(r.vm.c));
    o.add("varianceDenominator", Json::text(denominator_name(r.vm)));
    o.add("se", Json::number(r.se));
    o.add("wald", test_json(r.wald));
    o.add("lrt", test_json(r.lrt));
    o.add("lrtScaled", test_json(r.lrtScaled));
    return o;
}

std::string corr_report_table(const CorrReport& r) {
    std::ostringstream out;
    char line[160];
    out << "correlation: " << r.colX << " vs " << r.colY << "  (n = " << r.estimate.n << ")\n";
    std::snprintf(line, sizeof line, "  tauCorr  %12.6f\n  tauCov   %12.6f\n", r.estimate.tauCorr,
                  r.estimate.tauCov);
    out << line;
    std::snprintf(line, sizeof line, "  se       %12.6f   (c = %g, denominator %s)\n", r.se,
                  r.vm.c, denominator_name(r.vm));
    out << line;
    std::snprintf(line, sizeof line, "  gamma3   %12.6f\n  gamma4   %12.6f\n", r.estimate.gamma3,
                  r.estimate.gamma4);
    out << line;
    std::snprintf(line, sizeof line, "  wald       W = %10.4f   p = %.6g\n", r.wald.statistic,
                  r.wald.pValue);
    out << line;
    std::snprintf(line, sizeof line, "  lrt        L = %10.4f   p = %.6g\n", r.lrt.statistic,
                  r.lrt.pValue);
    out << line;
    std::snprintf(line, sizeof line, "  lrtScaled  Q = %10.4f   p = %.6g\n",
                  r.lrtScaled.statistic, r.lrtScaled.pValue);
    out << line;
    return out.str();
}

Json matrix_report_json(const MatrixReport& r) {
    Json o = Json::object();
    o.add("command", Json::text("matrix"));
    o.add("source", Json::text(r.source));
    o.add("n", Json::integer(static_cast<long long>(r.matrix.n)));
    o.add("p", Json::integer(static_cast<long long>(r.matrix.dim)));
    Json names = Json::array();
    for (const std::string& name : r.names) names.push(Json::text(name));
    o.add("columns", std::move(names));
    o.add("tau", matrix_json(r.matrix.entries));
    o.add("minEigenvalue", Json::number(r.matrix.minEigenvalue));
    o.add("psd", Json::boolean(r.matrix.psd));
    o.add("c", Json::number(r.vm.c));
    o.add("varianceDenominator", Json::text(denominator_name(r.vm)));
    Json tests = Json::array();
    for (const PairTest& t : r.tests) {
        Json e = Json::object();
        e.add("a", Json::integer(static_cast<long long>(t.a)));
        e.add("b", Json::integer(static_cast<long long>(t.b)));
        e.add("tauHat", Json::number(t.tauHat));
        e.add("boundary", Json::boolean(t.boundary));
        e.add("wald", test_json(t.wald));
        e.add("lrt", test_json(t.lrt));
        tests.push(std::move(e));
    }
    o.add("tests", std::move(tests));
    return o;
}

std::string matrix_report_table(const MatrixReport& r) {
    std::ostringstream out;
    out << "kappa matrix  (n = " << r.matrix.n << ", p = " << r.matrix.dim << ")\n";
    char buf[64];
    out << "        ";
    for (const std::string& name : r.names) {
        std::snprintf(buf, sizeof buf, " %10.10s", name.c_str());
        out << buf;
    }
    out << "\n";
    for (std::size_t i = 0; i < r.matrix.dim; ++i) {
        std::snprintf(buf, sizeof buf, "%8.8s", r.names[i].c_str());
        out << buf;
        for (std::size_t j = 0; j < r.matrix.dim; ++j) {
            std::snprintf(buf, sizeof buf, " %10.4f", r.matrix.entries(i, j));
            out << buf;
        }
        out << "\n";
    }
    std::snprintf(buf, sizeof buf, "min eigenvalue %.6g", r.matrix.minEigenvalue);
    out << buf << (r.matrix.psd ? "  (PSD)" : "  (not PSD)") << "\n";
    out << "pair tests (alpha unadjusted):\n";
    for (const PairTest& t : r.tests) {
        char line[160];
        std::snprintf(line, sizeof line,
                      "  (%s, %s)  tau = %9.4f  W = %10.4g  p = %-10.4g  L = %10.4g  p = %-10.4g%s\n",
                      r.names[t.a].c_str(), r.names[t.b].c_str(), t.tauHat, t.wald.statistic,
                      t.wald.pValue, t.lrt.statistic, t.lrt.pValue,
                      t.boundary ? "  [boundary]" : "");
        out << line;
    }
    return out.str();
}

Json fit_report_json(const FitReport& r) {
    Json o = Json::object();
    o.add("command", Json::text("fit"));
    o.add("source", Json::text(r.source));
    o.add("response", Json::text(r.response));
    Json preds = Json::array();
    for (const std::string& name : r.predictors) preds.push(Json::text(name));
    o.add("predictors", std::move(preds));
    o.add("n", Json::integer(static_cast<long long>(r.design.n)));
    o.add("p", Json::integer(static_cast<long long>(r.design.p)));
    o.add("fullRank", Json::boolean(r.design.fullRank));
    o.add("rank", Json::integer(static_cast<long long>(r.design.rank)));
    o.add("theta", vector_json(r.fit.theta));
    o.add("objective", Json::number(r.fit.objective));
    o.add("fitObjective", Json::number(r.fit.fitObjective));
    o.add("gradientNorm", Json::number(r.fit.gradientNorm));
    o.add("residual", vector_json(r.residual));
    o.add("residualNorm", Json::number(r.fit.residualNorm));
    o.add("iterations", Json::integer(static_cast<long long>(r.fit.iterations)));
    o.add("converged", Json::boolean(r.fit.converged));
    o.add("feasibilityMargin", Json::number(r.fit.feasibilityMargin));
    o.add("spanRestricted", Json::boolean(r.fit.spanRestricted));
    o.add("hessian", matrix_json(r.fit.hessian));
    Json trace = Json::array();
    for (const IterationRecord& rec : r.fit.trace) {
        Json e = Json::object();
        e.add("objective", Json::number(rec.objective));
        e.add("gradientNorm", Json::number(rec.gradientNorm));
        e.add("stepSize", Json::number(rec.stepSize));
        trace.push(std::move(e));
    }
    o.add("trace", std::move(trace));
    return o;
}

std::string fit_report_table(const FitReport& r) {
    std::ostringstream out;
    out << "fit: " << r.response << " ~";
    for (const std::string& p : r.predictors) out << " " << p;
    out << "  (n = " << r.design.n << ")\n";
    char line[160];
    for (std::size_t j = 0; j < r.fit.theta.size(); ++j) {
        std::snprintf(line, sizeof line, "  theta[%s] %14.8f\n", r.predictors[j].c_str(),
                      r.fit.theta[j]);
        out << line;
    }
    std::snprintf(line, sizeof line,
                  "  converged %s in %zu iterations, residual norm %.3g\n",
                  r.fit.converged ? "yes" : "NO", r.fit.iterations, r.fit.residualNorm);
    out << line;
    std::snprintf(line, sizeof line,
                  "  objective %.8g  feasibility margin %.3g%s\n", r.fit.objective,
                  r.fit.feasibilityMargin, r.fit.spanRestricted ? "  [span-restricted]" : "");
    out << line;
    return out.str();
}

namespace {

Json calibration_rows_json(const std::vector<CalibrationRow>& rows) {
    Json a = Json::array();
    for (const CalibrationRow& r : rows) {
        Json e = Json::object();
        e.add("generator", Json::text(r.generator));
        e.add("n", Json::integer(static_cast<long long>(r.n)));
        e.add("cHat", Json::number(r.cHat));
        e.add("cHatStdErr", Json::number(r.cHatStdErr));
        a.push(std::move(e));
    }
    return a;
}

Json rate_rows_json(const std::vector<RateRow>& rows) {
    Json a = Json::array();
    for (const RateRow& r : rows) {
        Json e = Json::object();
        e.add("test", Json::text(r.test));
        e.add("n", Json::integer(static_cast<long long>(r.n)));
        e.add("rate", Json::number(r.rate));
        e.add("cUsed", Json::number(r.cUsed));
        a.push(std::move(e));
    }
    return a;
}

}  // namespace

Json simulate_report_json(const std::string& study, const CalibrationReport& r) {
    Json o = Json::object();
    o.add("command", Json::text("simulate"));
    o.add("study", Json::text(study));
    o.add("generator", Json::text(generator_name(r.config.generator)));
    o.add("kLevels", Json::integer(r.config.kLevels));
    o.add("rho", Json::number(r.config.rho));
    Json grid = Json::array();
    for (std::size_t n : r.config.nGrid) grid.push(Json::integer(static_cast<long long>(n)));
    o.add("nGrid", std::move(grid));
    o.add("replicates", Json::integer(static_cast<long long>(r.config.replicates)));
    o.add("seed", Json::integer(static_cast<long long>(r.config.seed)));
    o.add("alpha", Json::number(r.config.alpha));

    if (study == "calibrate") {
        o.add("cHat", Json::number(r.cHat));
        o.add("cHatStdErr", Json::number(r.cHatStdErr));
        o.add("perDistribution", calibration_rows_json(r.perDistribution));
        o.add("kendallBaseline", calibration_rows_json(r.kendallBaseline));
        o.add("spread", Json::number(r.spread));
        o.add("spreadFlagged", Json::boolean(r.spreadFlagged));
    } else if (study == "size-power") {
        o.add("typeIError", rate_rows_json(r.typeIError));
        if (!r.power.empty()) o.add("power", rate_rows_json(r.power));
        Json bias = Json::array();
        for (const BiasRow& b : r.biasTable) {
            Json e = Json::object();
            e.add("estimator", Json::text(b.estimator));
            e.add("n", Json::integer(static_cast<long long>(b.n)));
            e.add("mean", Json::number(b.mean));
            e.add("population", Json::number(b.population));
            e.add("bias", Json::number(b.bias));
            e.add("mcStdErr", Json::number(b.mcStdErr));
            bias.push(std::move(e));
        }
        o.add("biasTable", std::move(bias));
        Json gaps = Json::array();
        for (const GapRow& g : r.pValueGaps) {
            Json e = Json::object();
            e.add("n", Json::integer(static_cast<long long>(g.n)));
            e.add("medianGapScaled", Json::number(g.medianGapScaled));
            e.add("medianGapPrinted", Json::number(g.medianGapPrinted));
            gaps.push(std::move(e));
        }
        o.add("pValueGaps", std::move(gaps));
        o.add("normalityStat", Json::number(r.normalityStat));
        o.add("normalityN", Json::integer(static_cast<long long>(r.normalityN)));
        if (r.config.generator == Generator::BivariateGaussianRho) {
            o.add("populationTau", Json::number(r.populationTau));
            o.add("populationTauStdErr", Json::number(r.populationTauStdErr));
        }
    } else {  // concentration
        Json table = Json::array();
        for (const ConcentrationRow& c : r.concentrationTable) {
            Json e = Json::object();
            e.add("epsilon", Json::number(c.epsilon));
            e.add("n", Json::integer(static_cast<long long>(c.n)));
            e.add("count", Json::integer(static_cast<long long>(c.count)));
            e.add("exceedance", Json::number(c.exceedance));
            table.push(std::move(e));
        }
        o.add("concentrationTable", std::move(table));
        Json slopes = Json::array();
        for (const auto& [eps, slope] : r.concentrationSlopes) {
            Json e = Json::object();
            e.add("epsilon", Json::number(eps));
            e.add("slope", Json::number(slope));
            slopes.push(std::move(e));
        }
        o.add("concentrationSlopes", std::move(slopes));
        if (r.config.generator == Generator::BivariateGaussianRho) {
            o.add("populationTau", Json::number(r.populationTau));
            o.add("populationTauStdErr", Json::number(r.populationTauStdErr));
        }
    }
    return o;
}

std::string simulate_report_table(const std::string& study, const CalibrationReport& r) {
    std::ostringstream out;
    char line[200];
    out << "simulate study: " << study << "  (generator " << generator_name(r.config.generator)
        << ", replicates " << r.config.replicates << ", seed " << r.config.seed << ")\n";
    if (study == "calibrate") {
        std::snprintf(line, sizeof line, "cHat = %.6g  (se %.3g)\n", r.cHat, r.cHatStdErr);
        out << line;
        out << "per distribution (n-keyed; the constant is n-dependent under these designs):\n";
        for (const CalibrationRow& row : r.perDistribution) {
            std::snprintf(line, sizeof line, "  %-22s n=%-6zu cHat = %.6g  (se %.3g)\n",
                          row.generator.c_str(), row.n, row.cHat, row.cHatStdErr);
            out << line;
        }
        out << "kendall tau_a baseline (not part of the estimator family):\n";
        for (const CalibrationRow& row : r.kendallBaseline) {
            std::snprintf(line, sizeof line, "  %-22s n=%-6zu n*Var = %.6g  (se %.3g)\n",
                          row.generator.c_str(), row.n, row.cHat, row.cHatStdErr);
            out << line;
        }
        std::snprintf(line, sizeof line, "spread across H0 families = %.6g%s\n", r.spread,
                      r.spreadFlagged ? "  [FLAGGED > 0.05]" : "");
        out << line;
    } else if (study == "size-power") {
        out << "type I error (alpha = " << r.config.alpha << "):\n";
        for (const RateRow& row : r.typeIError) {
            std::snprintf(line, sizeof line, "  %-10s n=%-6zu rate = %.4f  (c = %.6g)\n",
                          row.test.c_str(), row.n, row.rate, row.cUsed);
            out << line;
        }
        if (!r.power.empty()) {
            out << "power:\n";
            for (const RateRow& row : r.power) {
                std::snprintf(line, sizeof line, "  %-10s n=%-6zu rate = %.4f\n",
                              row.test.c_str(), row.n, row.rate);
                out << line;
            }
        }
        if (!r.biasTable.empty()) {
            out << "bias (mean tauHat - population value):\n";
            for (const BiasRow& b : r.biasTable) {
                std::snprintf(line, sizeof line,
                              "  %-8s n=%-6zu mean = %11.4e  bias = %11.4e  (mc se %.3g)\n",
                              b.estimator.c_str(), b.n, b.mean, b.bias, b.mcStdErr);
                out << line;
            }
        }
        out << "p-value gaps (median |p_wald - p|):\n";
        for (const GapRow& g : r.pValueGaps) {
            std::snprintf(line, sizeof line, "  n=%-6zu scaled lrt %.6g   printed lrt %.6g\n",
                          g.n, g.medianGapScaled, g.medianGapPrinted);
            out << line;
        }
        std::snprintf(line, sizeof line, "KS(standardized tauHat, N(0,1)) = %.4f at n = %zu\n",
                      r.normalityStat, r.normalityN);
        out << line;
    } else {
        out << "exceedance P(|tauHat - tau| > eps):\n";
        for (const ConcentrationRow& c : r.concentrationTable) {
            std::snprintf(line, sizeof line, "  eps=%-5.2f n=%-6zu count=%-7zu rate = %.6g\n",
                          c.epsilon, c.n, c.count, c.exceedance);
            out << line;
        }
        out << "floored log-exceedance slope in n:\n";
        for (const auto& [eps, slope] : r.concentrationSlopes) {
            std::snprintf(line, sizeof line, "  eps=%-5.2f slope = %.6g\n", eps, slope);
            out << line;
        }
    }
    if (r.config.generator == Generator::BivariateGaussianRho &&
        (study == "size-power" || study == "concentration")) {
        std::snprintf(line, sizeof line, "population tau (plug-in) = %.6g  (se %.3g)\n",
                      r.populationTau, r.populationTauStdErr);
        out << line;
    }
    return out.str();
}

}  // namespace kappa
