#include <doctest.h>

#include <random>

#include "star/core/error.hpp"
#include "star/temporal/interval.hpp"

using namespace star;
using namespace star::temporal;

namespace {

// Endpoint-table definition of the 13 relations.
bool oracle(AllenRelation r, Interval a, Interval b) {
  const double as = a.start, ae = a.end, bs = b.start, be = b.end;
  switch (r) {
    case AllenRelation::Before: return ae < bs;
    case AllenRelation::After: return be < as;
    // a point touching an endpoint starts/finishes rather than meets
    case AllenRelation::Meets: return ae == bs && as < ae && bs < be;
    case AllenRelation::MetBy: return be == as && bs < be && as < ae;
    case AllenRelation::Overlaps: return as < bs && bs < ae && ae < be;
    case AllenRelation::OverlappedBy: return bs < as && as < be && be < ae;
    case AllenRelation::Starts: return as == bs && ae < be;
    case AllenRelation::StartedBy: return as == bs && be < ae;
    case AllenRelation::During: return bs < as && ae < be;
    case AllenRelation::Contains: return as < bs && be < ae;
    case AllenRelation::Finishes: return ae == be && bs < as;
    case AllenRelation::FinishedBy: return ae == be && as < bs;
    case AllenRelation::Equals: return as == bs && ae == be;
  }
  return false;
}

bool covered(const std::vector<Interval>& xs, double t) {
  for (auto i : xs)
    if (i.start <= t && t <= i.end) return true;
  return false;
}

}  // namespace

TEST_CASE("Allen relations from worked traces") {
  CHECK_FALSE(allen_relation(AllenRelation::During, {1.577, 10.761}, {6.5003, 11.8556}));
  CHECK(classify_allen({1.577, 10.761}, {6.5003, 11.8556}) == AllenRelation::Overlaps);
  CHECK_FALSE(allen_relation(AllenRelation::Overlaps, {1.0, 3.0}, {1.0, 2.5}));
  CHECK(classify_allen({1.0, 3.0}, {1.0, 2.5}) == AllenRelation::StartedBy);
  CHECK(allen_relation(AllenRelation::Equals, {2, 5}, {2, 5}));
  CHECK(classify_allen({1, 2}, {3, 4}) == AllenRelation::Before);
  CHECK(allen_relation("allen_during", {2, 3}, {1, 4}));
  CHECK(allen_relation("met_by", {2, 3}, {1, 2}));
  CHECK_THROWS_AS(parse_allen("sometime"), ContractError);
  CHECK_THROWS_AS(allen_relation(AllenRelation::Before, {3, 1}, {4, 5}), ValidationError);
}

TEST_CASE("names round trip and converses pair up") {
  for (auto r : kAllenRelations) {
    CHECK(parse_allen(name_of(r)) == r);
    CHECK(converse(converse(r)) == r);
  }
  CHECK(converse(AllenRelation::Before) == AllenRelation::After);
  CHECK(converse(AllenRelation::During) == AllenRelation::Contains);
  CHECK(converse(AllenRelation::Equals) == AllenRelation::Equals);
}

TEST_CASE("exactly one relation holds and it matches the endpoint table") {
  std::mt19937_64 rng(13);
  std::uniform_int_distribution<int> u(0, 6);  // small range: many shared endpoints
  for (int k = 0; k < 20000; ++k) {
    int a0 = u(rng), a1 = u(rng), b0 = u(rng), b1 = u(rng);
    Interval a{double(std::min(a0, a1)), double(std::max(a0, a1))};
    Interval b{double(std::min(b0, b1)), double(std::max(b0, b1))};
    int holds = 0;
    for (auto r : kAllenRelations) {
      const bool h = allen_relation(r, a, b);
      CHECK(h == oracle(r, a, b));
      CHECK(h == allen_relation(converse(r), b, a));
      holds += h ? 1 : 0;
    }
    CHECK(holds == 1);
    CHECK(oracle(classify_allen(a, b), a, b));
  }
}

TEST_CASE("interval set algebra") {
  CHECK(interval_set(SetOp::Union, {{1, 3}}, {{2, 5}}) == std::vector<Interval>{{1, 5}});
  CHECK(interval_set(SetOp::Intersection, {{0, 1}}, {{2, 3}}).empty());
  CHECK(interval_set(SetOp::Difference, {{0, 10}}, {{3, 4}}) == std::vector<Interval>{{0, 3}, {4, 10}});
  CHECK(canonicalize({{3, 4}, {0, 1}, {1, 2}}) == std::vector<Interval>{{0, 2}, {3, 4}});
}

TEST_CASE("interval set agrees with point sampling") {
  std::mt19937_64 rng(17);
  std::uniform_int_distribution<int> u(0, 100);
  auto random_set = [&] {
    std::vector<Interval> xs;
    const int n = 1 + static_cast<int>(rng() % 4);
    for (int i = 0; i < n; ++i) {
      int s = u(rng), e = u(rng);
      xs.push_back({std::min(s, e) / 10.0, std::max(s, e) / 10.0});
    }
    return xs;
  };
  for (int k = 0; k < 200; ++k) {
    auto a = random_set(), b = random_set();
    auto uni = interval_set(SetOp::Union, a, b);
    auto inter = interval_set(SetOp::Intersection, a, b);
    auto diff = interval_set(SetOp::Difference, a, b);
    for (auto* r : {&uni, &inter, &diff}) {
      CHECK(canonicalize(*r) == *r);
      for (std::size_t i = 1; i < r->size(); ++i) CHECK((*r)[i - 1].end < (*r)[i].start);
    }
    // Sample strictly between 0.01-grid points so closed/open endpoint choices
    // do not matter.
    for (int s = 0; s <= 1000; ++s) {
      const double t = s / 100.0 + 0.005;
      const bool ia = covered(a, t), ib = covered(b, t);
      CHECK(covered(uni, t) == (ia || ib));
      CHECK(covered(inter, t) == (ia && ib));
      CHECK(covered(diff, t) == (ia && !ib));
    }
  }
}

TEST_CASE("forecast") {
  std::vector<double> flat(20, 5.0);
  for (auto v : forecast(flat, 7)) CHECK(v == 5.0);
  CHECK(forecast(flat, 0).empty());

  std::vector<double> cyc;
  for (int r = 0; r < 3; ++r)
    for (double v : {1.0, 2.0, 3.0, 4.0}) cyc.push_back(v);
  CHECK(infer_period(cyc) == 4u);
  // seasonal values 1,2,3,4 ; trailing 4-mean 2.5
  auto f = forecast(cyc, 5);
  REQUIRE(f.size() == 5);
  CHECK(f[0] == doctest::Approx(1.75));
  CHECK(f[1] == doctest::Approx(2.25));
  CHECK(f[2] == doctest::Approx(2.75));
  CHECK(f[3] == doctest::Approx(3.25));
  CHECK(f[4] == doctest::Approx(1.75));

  ForecastOptions o;
  o.period = 2;
  o.window = 3;
  f = forecast({1, 2, 3, 4, 5, 6}, 1, o);
  CHECK(f[0] == doctest::Approx((5.0 + 5.0) / 2.0));

  CHECK_THROWS_AS(forecast({1, 2, 3}, 1, o), InsufficientDataError);
  CHECK_FALSE(infer_period({1, 1, 1, 1, 1}).has_value());
  CHECK_FALSE(infer_period({1, 2}).has_value());
}
