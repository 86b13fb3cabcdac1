#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <set>
#include <tuple>

#include "bench.hpp"

using namespace skillforge;

namespace {

BenchConfig quick() {
  BenchConfig c;
  c.exploration_iterations = 300;
  c.mcts_iterations = 300;
  return c;
}

const std::vector<RunRecord>& small_matrix() {
  static const std::vector<RunRecord> records =
      run_matrix({"a", "b"}, {Method::kOA, Method::kOFL, Method::kMCTS}, 3, 10, quick());
  return records;
}

RunRecord record(std::string sc, std::string m, std::uint64_t seed, bool ok, std::int64_t it,
                 std::uint64_t steps) {
  RunRecord r;
  r.scenario = std::move(sc);
  r.method = std::move(m);
  r.seed = seed;
  r.success = ok;
  r.iterations = it;
  r.sim_steps = steps;
  r.status = ok ? RunStatus::kFound : RunStatus::kExhausted;
  return r;
}

}  // namespace

TEST_CASE("method names") {
  for (Method m : all_methods()) CHECK(method_from_string(to_string(m)) == m);
  CHECK(method_from_string("ofl") == Method::kOFL);
  CHECK_THROWS_AS(method_from_string("random"), Error);
  CHECK(all_methods().size() == 6);
}

TEST_CASE("quartiles") {
  auto q = quartiles({4, 1, 3, 2});
  CHECK(q.q1 == doctest::Approx(1.75));
  CHECK(q.q2 == doctest::Approx(2.5));
  CHECK(q.q3 == doctest::Approx(3.25));
  auto one = quartiles({7});
  CHECK(one.q1 == 7);
  CHECK(one.q3 == 7);
  CHECK(std::isnan(quartiles({}).q2));

  std::mt19937 rng(2);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<double> v(1 + rng() % 30);
    for (auto& x : v) x = static_cast<double>(rng() % 1000);
    auto s = v;
    std::sort(s.begin(), s.end());
    const std::size_t n = s.size();
    const double med = n % 2 ? s[n / 2] : (s[n / 2 - 1] + s[n / 2]) / 2;
    auto got = quartiles(v);
    CHECK(got.q2 == doctest::Approx(med));
    CHECK(got.q1 <= got.q2);
    CHECK(got.q2 <= got.q3);
    CHECK(got.q1 >= s.front());
    CHECK(got.q3 <= s.back());
    // Quarter points that fall on an index are sample values.
    if ((n - 1) % 4 == 0) {
      CHECK(got.q1 == s[(n - 1) / 4]);
      CHECK(got.q3 == s[3 * (n - 1) / 4]);
    }
  }
}

TEST_CASE("summaries recount the records") {
  std::vector<RunRecord> rs{
      record("a", "OFL", 0, true, 5, 50),   record("a", "OFL", 1, true, 9, 90),
      record("a", "OFL", 2, false, 300, 900), record("a", "MCTS", 0, true, 100, 400),
      record("a", "MCTS", 1, false, 300, 1000), record("b", "OFL", 0, true, 3, 30),
  };
  rs.push_back(record("c2", "OFL", 0, false, 0, 0));
  rs.back().status = RunStatus::kPriorUnavailable;

  auto s = summarize(rs);
  REQUIRE(s.rows.size() == 4);
  const auto& ofl = s.rows[0];
  CHECK(ofl.runs == 3);
  CHECK(ofl.successes == 2);
  CHECK(ofl.timeouts == 1);
  CHECK(ofl.success_rate == doctest::Approx(2.0 / 3.0));
  CHECK(ofl.iterations.q2 == doctest::Approx(7.0));
  CHECK(s.rows[2].timeouts == 0);  // all-success cell
  CHECK(s.rows[3].prior_unavailable == 1);
  CHECK(s.rows[3].timeouts == 0);

  REQUIRE(s.deltas.size() == 1);
  CHECK(s.deltas[0].success_rate_delta == doctest::Approx(2.0 / 3.0 - 0.5));
  CHECK(s.deltas[0].median_sim_steps_delta == doctest::Approx(70.0 - 400.0));

  auto text = format_summary(s);
  CHECK(text.find("c2 OFL 1 0.000 - - - - 0 1") != std::string::npos);
}

TEST_CASE("CSV round trip and append-only aggregation") {
  const auto& rs = small_matrix();
  auto csv = to_csv(rs);
  CHECK(csv.rfind(std::string(kCsvHeader) + "\n", 0) == 0);
  auto back = parse_csv(csv);
  REQUIRE(back.size() == rs.size());
  for (std::size_t i = 0; i < rs.size(); ++i) {
    CHECK(back[i].scenario == rs[i].scenario);
    CHECK(back[i].seed == rs[i].seed);
    CHECK(back[i].success == rs[i].success);
    CHECK(back[i].iterations == rs[i].iterations);
    CHECK(back[i].sim_steps == rs[i].sim_steps);
    CHECK(to_csv_row(back[i]) == to_csv_row(rs[i]));
  }
  // Re-aggregating the parsed rows gives the same summary text.
  CHECK(format_summary(summarize(back)) == format_summary(summarize(rs)));

  // Appending rows and re-aggregating leaves earlier cells untouched.
  auto more = back;
  more.push_back(record("d1", "OFL", 0, true, 4, 40));
  auto s1 = summarize(back), s2 = summarize(more);
  REQUIRE(s2.rows.size() == s1.rows.size() + 1);
  for (std::size_t i = 0; i < s1.rows.size(); ++i) {
    CHECK(s2.rows[i].runs == s1.rows[i].runs);
    CHECK(s2.rows[i].successes == s1.rows[i].successes);
  }

  CHECK_THROWS_AS(parse_csv("scenario,method\na,b\n"), Error);
  CHECK_THROWS_AS(parse_csv(std::string(kCsvHeader) + "\na,OFL,x,1,1,1,1,1,1,1\n"), Error);
}

TEST_CASE("matrix rows are unique per scenario, method and seed") {
  const auto& rs = small_matrix();
  CHECK(rs.size() == 2 * 3 * 3);
  std::set<std::tuple<std::string, std::string, std::uint64_t>> keys;
  for (const auto& r : rs) {
    CHECK(keys.insert({r.scenario, r.method, r.seed}).second);
    CHECK(r.seed >= 10);
    CHECK(r.seed < 13);
    CHECK(r.sim_time_frac >= 0.0);
    CHECK(r.sim_time_frac <= 1.0);
    if (r.success) {
      CHECK(r.solution_len > 0);
      CHECK(r.key_len <= r.solution_len);
    }
  }
}

TEST_CASE("runs are reproducible apart from timing") {
  auto x = run_one("a", Method::kOFL, 4, quick());
  auto y = run_one("a", Method::kOFL, 4, quick());
  x.wall_ms = y.wall_ms = 0;
  x.sim_time_frac = y.sim_time_frac = 0;
  CHECK(to_csv_row(x) == to_csv_row(y));
  CHECK(x.domain == y.domain);
}

TEST_CASE("a scenario without its prior is marked, not failed") {
  auto r = run_one("c2", Method::kOFL, 0, quick());
  CHECK(r.status == RunStatus::kPriorUnavailable);
  CHECK_FALSE(r.success);
  CHECK(r.iterations == 0);
}

TEST_CASE("matched simulation budgets") {
  BenchConfig c = quick();
  c.exploration_iterations = -1;
  c.mcts_iterations = -1;
  c.max_sim_steps = 200;
  for (Method m : {Method::kOFL, Method::kMCTS}) {
    auto r = run_one("c1", m, 0, c);
    if (!r.success) CHECK(r.sim_steps >= 200);
    CHECK(r.sim_steps <= 200 + 16);
  }
}
