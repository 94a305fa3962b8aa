#include <doctest.h>

#include <cmath>
#include <limits>

#include "bnsent/error.hpp"
#include "bnsent/eval.hpp"
#include "bnsent/random.hpp"
#include "bnsent/suite.hpp"
#include "oracles.hpp"

using namespace bnsent;
using namespace bnsent::eval;
using corpus::Label;
using doctest::Approx;

namespace {

constexpr Label P = Label::kPositive;
constexpr Label N = Label::kNegative;

std::string error_code(const auto& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return "";
}

}  // namespace

TEST_SUITE("eval") {
  TEST_CASE("confusion matrices") {
    const std::vector<Label> y{P, P, N, N};
    CHECK(confusion(y, y) == ConfusionMatrix{2, 0, 2, 0});
    CHECK(confusion(y, std::vector<Label>{P, N, N, P}) == ConfusionMatrix{1, 1, 1, 1});
    const std::vector<Label> neg(5, N), pos(5, P);
    CHECK(confusion(neg, pos) == ConfusionMatrix{0, 5, 0, 0});
    CHECK(error_code([&] { confusion(y, neg); }) == "eval.length");
    CHECK(error_code([] { confusion(std::vector<Label>{}, std::vector<Label>{}); }) == "eval.empty");
  }

  TEST_CASE("metrics by hand") {
    const auto m = metrics({50, 10, 30, 10});
    CHECK(m.accuracy == Approx(0.8).epsilon(1e-15));
    CHECK(m.precision == Approx(50.0 / 60.0).epsilon(1e-15));
    CHECK(m.recall == Approx(50.0 / 60.0).epsilon(1e-15));
    CHECK(m.f1 == Approx(50.0 / 60.0).epsilon(1e-15));
    CHECK_FALSE(m.degenerate);
    const auto perfect = metrics({3, 0, 4, 0});
    CHECK(perfect.accuracy == 1.0);
    CHECK(perfect.precision == 1.0);
    CHECK(perfect.recall == 1.0);
    CHECK(perfect.f1 == 1.0);
  }

  TEST_CASE("F1 of the paper's logistic regression and SGD rows") {
    CHECK(std::abs(f1_score(0.9640, 0.8590) - 0.9085) <= 0.0005);
    CHECK(std::abs(f1_score(0.9504, 0.8590) - 0.9024) <= 0.0005);
  }

  TEST_CASE("zero denominators are flagged, not fatal") {
    const auto m = metrics({0, 0, 5, 0});
    CHECK(m.precision == 0.0);
    CHECK(m.recall == 0.0);
    CHECK(m.f1 == 0.0);
    CHECK(m.accuracy == 1.0);
    CHECK(m.degenerate);
  }

  TEST_CASE("percentages round half up") {
    CHECK(percent(270.0 / 297.0) == 90.91);
    CHECK(percent(0.12345) == 12.35);
    CHECK(percent(0.12344) == 12.34);
    CHECK(percent(1.0) == 100.0);
  }

  TEST_CASE("metric invariants on random matrices") {
    Rng rng(3);
    for (int i = 0; i < 2000; ++i) {
      ConfusionMatrix cm{rng.uniform_index(20), rng.uniform_index(20), rng.uniform_index(20),
                         rng.uniform_index(20)};
      if (cm.total() == 0) continue;
      const auto m = metrics(cm);
      for (double v : {m.accuracy, m.precision, m.recall, m.f1}) {
        CHECK(v >= 0.0);
        CHECK(v <= 1.0);
      }
      if (cm.tp > 0) {
        CHECK(m.f1 <= std::max(m.precision, m.recall) + 1e-15);
        CHECK(m.f1 >= std::min(m.precision, m.recall) - 1e-15);
      }
    }
  }

  TEST_CASE("ROC curves") {
    const std::vector<double> s{0.9, 0.4, 0.6, 0.2};
    const std::vector<Label> y{P, N, P, N};
    const auto roc = roc_curve(s, y);
    CHECK(roc.area == 1.0);
    CHECK(std::isinf(roc.points.front().threshold));
    CHECK(roc.points.front().x == 0.0);
    CHECK(roc.points.front().y == 0.0);
    bool through = false;
    for (const auto& p : roc.points) through |= p.x == 0.0 && p.y == 0.5;
    CHECK(through);
    CHECK(roc.points.back().x == 1.0);
    CHECK(roc.points.back().y == 1.0);
    const std::vector<double> anti{0.1, 0.9, 0.2, 0.8};
    CHECK(roc_curve(anti, y).area == 0.0);
    CHECK(error_code([] { roc_curve(std::vector<double>{1.0}, std::vector<Label>{P}); }) ==
          "eval.single_class");
  }

  TEST_CASE("tied scores give a diagonal ROC segment") {
    const std::vector<double> s(4, 0.3);
    const std::vector<Label> y{P, N, P, N};
    const auto roc = roc_curve(s, y);
    CHECK(roc.points.size() == 2);
    CHECK(roc.area == 0.5);
    CHECK(pairwise_auc(s, y) == 0.5);
  }

  TEST_CASE("trapezoidal and pairwise AUC agree") {
    Rng rng(12);
    for (int trial = 0; trial < 300; ++trial) {
      const std::size_t n = 2 + rng.uniform_index(60);
      std::vector<double> s(n);
      std::vector<Label> y(n);
      for (std::size_t i = 0; i < n; ++i) {
        s[i] = static_cast<double>(rng.uniform_index(8)) / 8.0;
        y[i] = rng.uniform01() < 0.5 ? P : N;
      }
      y[0] = P;
      y[1] = N;
      CHECK(std::abs(roc_curve(s, y).area - pairwise_auc(s, y)) <= 1e-9);
    }
  }

  TEST_CASE("PR curves") {
    const std::vector<double> s{0.9, 0.4, 0.6, 0.2};
    const std::vector<Label> y{P, N, P, N};
    const auto pr = pr_curve(s, y);
    REQUIRE(pr.points.size() == 2);
    CHECK(pr.points[0].threshold == 0.9);
    CHECK(pr.points[0].x == 0.5);
    CHECK(pr.points[0].y == 1.0);
    CHECK(pr.points[1].threshold == 0.6);
    CHECK(pr.points[1].x == 1.0);
    CHECK(pr.points[1].y == 1.0);
    CHECK(pr.area == 1.0);

    const std::vector<double> flat(5, 0.7);
    const std::vector<Label> yf{P, N, N, P, N};
    const auto f = pr_curve(flat, yf);
    REQUIRE(f.points.size() == 1);
    CHECK(f.points[0].x == 1.0);
    CHECK(f.points[0].y == Approx(0.4));
    CHECK(error_code([] { pr_curve(std::vector<double>{1.0}, std::vector<Label>{N}); }) ==
          "eval.no_positives");
  }

  TEST_CASE("curve CSV") {
    const auto roc = roc_curve(std::vector<double>{0.9, 0.1}, std::vector<Label>{P, N});
    const auto csv = curve_csv(roc);
    CHECK(csv.rfind("threshold,x,y\ninf,0,0\n", 0) == 0);
  }

  TEST_CASE("suite reports") {
    // Two linear models on one feature: a perfect one and a constant majority
    // predictor.
    const auto x = testing::to_matrix({{1.0}, {-1.0}, {-2.0}, {2.0}, {-3.0}}, 1);
    const std::vector<Label> y{P, N, N, P, N};
    models::TrainedModel good, majority;
    good.spec = models::ModelSpec::defaults(models::ModelKind::kLinearSvc);
    good.params = models::LinearModel{{1.0}, 0.0, models::Loss::kHinge};
    good.dim = 1;
    majority.spec = models::ModelSpec::defaults(models::ModelKind::kSgd);
    majority.params = models::LinearModel{{0.0}, -1.0, models::Loss::kHinge};
    majority.dim = 1;
    const std::vector<NamedModel> named{{"major", &majority, "fp"}, {"good", &good, "fp"}};
    const auto r = evaluate_suite(named, x, y, "fp");
    REQUIRE(r.rows.size() == 2);
    CHECK(r.rows[0].id == "good");
    CHECK(r.rows[0].metrics.accuracy == 1.0);
    CHECK(r.rows[1].metrics.accuracy == Approx(0.6));
    CHECK(r.rows[1].metrics.degenerate);
    CHECK(r.notes.size() == 1);
    CHECK(r.notes[0] == rbf_exclusion_note());

    const auto j = report_json(r);
    CHECK(j["rows"].size() == 2);
    CHECK(j["rows"][0]["accuracy"] == 1.0);
    CHECK(j["rows"][0]["percent"]["accuracy"] == 100.0);
    const auto md = report_markdown(j);
    CHECK(md.find("| 1 | Linear SupportVectorClassification | 100.00 |") != std::string::npos);
    CHECK(md.find("RBF") != std::string::npos);

    const std::vector<NamedModel> wrong{{"good", &good, "other"}};
    CHECK(error_code([&] { evaluate_suite(wrong, x, y, "fp"); }) == "eval.fingerprint");
  }
}
