#include <gtest/gtest.h>

#include <cmath>
#include <memory>
#include <sstream>

#include "driftkit/chain_io.hpp"
#include "driftkit/error.hpp"
#include "driftkit/montecarlo.hpp"
#include "driftkit/oracle.hpp"

namespace dk = driftkit;

namespace {

dk::ProcessSpec chain_spec(const std::string& text, std::size_t start) {
  auto chain = std::make_shared<const dk::MarkovChain>(dk::parse_chain_text(text));
  std::vector<double> s(chain->size(), 0.0);
  s[start] = 1.0;
  return dk::ProcessSpec::explicit_chain(chain, s);
}

std::string countdown_text(int len) {
  std::ostringstream os;
  os << "0 1\n";
  for (int x = 1; x <= len; ++x) os << x << " 0 " << x - 1 << ":1\n";
  return os.str();
}

bool same(const dk::EmpiricalStats& a, const dk::EmpiricalStats& b) {
  if (a.records.size() != b.records.size()) return false;
  for (std::size_t i = 0; i < a.records.size(); ++i) {
    if (a.records[i].time != b.records[i].time || a.records[i].capped != b.records[i].capped) return false;
  }
  return a.mean == b.mean && a.variance == b.variance && a.quantiles == b.quantiles && a.capped == b.capped &&
         a.histogram.size() == b.histogram.size();
}

}  // namespace

TEST(RunTrials, DeterministicChain) {
  dk::TrialOptions o;
  o.trials = 100;
  const auto st = dk::run_trials(chain_spec(countdown_text(10), 10), o);
  EXPECT_EQ(st.mean, 10.0);
  EXPECT_EQ(st.variance, 0.0);
  for (double q : st.quantiles) EXPECT_EQ(q, 10.0);
  EXPECT_EQ(st.generator, dk::kGeneratorId);
}

TEST(RunTrials, GeometricMean) {
  dk::TrialOptions o;
  o.trials = 1'000'000;
  o.master_seed = 5;
  const auto st = dk::run_trials(chain_spec("0 1\n1 0 0:0.5 1:0.5\n", 1), o);
  EXPECT_NEAR(st.mean, 2.0, 4 * st.standard_error);
  for (std::size_t i = 1; i < st.quantiles.size(); ++i) EXPECT_LE(st.quantiles[i - 1], st.quantiles[i]);
}

TEST(RunTrials, WorkerCountDoesNotMatter) {
  dk::TrialOptions o;
  o.trials = 3000;
  o.master_seed = 123;
  const auto spec = dk::ProcessSpec::onemax(40);
  o.workers = 1;
  const auto a = dk::run_trials(spec, o);
  for (unsigned w : {2u, 3u, 8u}) {
    o.workers = w;
    EXPECT_TRUE(same(a, dk::run_trials(spec, o))) << w;
  }
}

TEST(RunTrials, Capping) {
  dk::TrialOptions o;
  o.trials = 20;
  o.step_cap = 5;
  EXPECT_THROW(dk::run_trials(chain_spec(countdown_text(10), 10), o), dk::EstimationError);
  o.trials = 2000;
  o.step_cap = 2;
  const auto st = dk::run_trials(chain_spec("0 1\n1 0 0:0.5 1:0.5\n", 1), o);
  EXPECT_GT(st.capped, 0u);
  EXPECT_FALSE(st.moments_valid);
  EXPECT_THROW(dk::concentration_check(st, {}), dk::EstimationError);
}

TEST(Wilson, Basics) {
  const auto z = dk::wilson_interval(0, 100, dk::kZ99);
  EXPECT_EQ(z.lo, 0.0);
  EXPECT_GT(z.hi, 0.0);
  const auto h = dk::wilson_interval(50, 100, dk::kZ99);
  EXPECT_NEAR(h.lo + h.hi, 1.0, 1e-12);
  const auto f = dk::wilson_interval(100, 100, dk::kZ999);
  EXPECT_EQ(f.hi, 1.0);
}

TEST(EmpiricalTail, Edges) {
  dk::TrialOptions o;
  o.trials = 500;
  const auto st = dk::run_trials(chain_spec("0 1\n1 0 0:0.5 1:0.5\n", 1), o);
  EXPECT_EQ(dk::empirical_tail(st, 0).fraction, 1.0);
  const auto past = dk::empirical_tail(st, st.sorted_times.back() + 1);
  EXPECT_EQ(past.fraction, 0.0);
  EXPECT_EQ(past.ci99.lo, 0.0);
  EXPECT_GT(past.ci99.hi, 0.0);
}

TEST(Concentration, Verdicts) {
  dk::TrialOptions o;
  o.trials = 1000;
  const auto st = dk::run_trials(chain_spec(countdown_text(10), 10), o);
  const auto rep = dk::concentration_check(st, {{"vacuous", 5, 1.0, dk::ClaimSide::UpperTail, std::nullopt},
                                                {"after", 11, 0.5, dk::ClaimSide::UpperTail, std::nullopt},
                                                {"wrong", 10, 0.1, dk::ClaimSide::UpperTail, std::nullopt}});
  EXPECT_EQ(rep.records[0].verdict, dk::Verdict::Consistent);
  EXPECT_EQ(rep.records[1].verdict, dk::Verdict::Consistent);
  EXPECT_EQ(rep.records[2].verdict, dk::Verdict::Violation);
  EXPECT_TRUE(rep.any_violation());
}

TEST(Concentration, OneMaxMultiplicativeTail) {
  const int n = 100;
  const double en = 2.718281828459045 * n;
  dk::TrialOptions o;
  o.trials = 20000;
  o.master_seed = 2;
  const auto st = dk::run_trials(dk::ProcessSpec::onemax(n), o);
  std::vector<dk::TailClaim> claims;
  for (double r : {1.0, 2.0, 3.0}) claims.push_back({"r", std::ceil(en * (std::log(n) + r)), std::exp(-r), dk::ClaimSide::UpperTail, std::nullopt});
  const auto rep = dk::concentration_check(st, claims);
  for (const auto& c : rep.records) EXPECT_EQ(c.verdict, dk::Verdict::Consistent);
}

TEST(Csv, TrialRows) {
  dk::TrialOptions o;
  o.trials = 3;
  const auto st = dk::run_trials(chain_spec(countdown_text(2), 2), o);
  std::ostringstream os;
  dk::write_trials_csv(os, st);
  EXPECT_EQ(os.str(), "trial,T,capped\n0,2,0\n1,2,0\n2,2,0\n");
}
