#pragma once

#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "kappa/dataset.hpp"
#include "kappa/estimator.hpp"
#include "kappa/inference.hpp"
#include "kappa/multivariate.hpp"
#include "kappa/regression.hpp"
#include "kappa/simulate.hpp"

// Structured reports. Machine mode is a single JSON document with insertion-
// ordered keys and doubles printed with 17 significant digits, so identical
// input, flags, and seed give byte-identical output and every number
// round-trips exactly. Table mode is for people; it rounds.

namespace kappa {

class Json {
public:
    static Json object() { return Json(Object{}); }
    static Json array() { return Json(Array{}); }
    static Json number(double v) { return Json(v); }
    static Json integer(long long v) { return Json(v); }
    static Json boolean(bool v) { return Json(v); }
    static Json text(std::string v) { return Json(std::move(v)); }

    Json& add(const std::string& key, Json v);  // object insert, keeps order
    Json& push(Json v);                         // array append

    std::string dump() const;

private:
    struct Object {
        std::vector<std::pair<std::string, Json>> members;
    };
    struct Array {
        std::vector<Json> elements;
    };
    using Value = std::variant<double, long long, bool, std::string, Object, Array>;

    template <typename T>
    explicit Json(T v) : value_(std::move(v)) {}

    void write(std::string& out) const;

    Value value_;
};

struct CorrReport {
    std::string source, colX, colY;
    KappaEstimate estimate;
    VarianceModel vm;
    double se = 0.0;
    TestResult wald, lrt, lrtScaled;
};

Json corr_report_json(const CorrReport& r);
std::string corr_report_table(const CorrReport& r);

struct MatrixReport {
    std::string source;
    std::vector<std::string> names;
    KappaMatrix matrix;
    VarianceModel vm;
    std::vector<PairTest> tests;
};

Json matrix_report_json(const MatrixReport& r);
std::string matrix_report_table(const MatrixReport& r);

struct FitReport {
    std::string source, response;
    std::vector<std::string> predictors;
    ContrastDesign design;  // for rank flags
    RegressionFit fit;
    std::vector<double> residual;  // estimating-equation residual at theta
};

Json fit_report_json(const FitReport& r);
std::string fit_report_table(const FitReport& r);

Json simulate_report_json(const std::string& study, const CalibrationReport& r);
std::string simulate_report_table(const std::string& study, const CalibrationReport& r);

}  // namespace kappa
