#include <catch_amalgamated.hpp>

#include <cmath>
#include <random>
#include <sstream>

#include "support/fixtures.hpp"

using namespace omegafract;
using namespace fixtures;
using Catch::Matchers::WithinAbs;

namespace {

const double kCantorDim = std::log(2.0) / std::log(3.0);

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an omegafract::Error");
  return ErrorCode::usage;
}

std::pair<Rational, Rational> interval(const Box& b, unsigned base) { return box_bounds(b, base).front(); }

/// Random length-n path from a random start state of a trim automaton.
Word random_walk(const Automaton& a, std::size_t n, std::mt19937_64& rng) {
  std::uniform_int_distribution<std::size_t> pick_start(0, a.start().size() - 1);
  StateId q = a.start()[pick_start(rng)];
  Word w;
  for (std::size_t i = 0; i < n; ++i) {
    const auto out = a.out(q);
    std::uniform_int_distribution<std::size_t> pick(0, out.size() - 1);
    const Transition& t = out[pick(rng)];
    w.push_back(t.symbol);
    q = t.to;
  }
  return w;
}

Rational parse_rational(const std::string& text) {
  const auto slash = text.find('/');
  return Rational(BigInt(text.substr(0, slash)), BigInt(text.substr(slash + 1)));
}

}  // namespace

TEST_CASE("nu_k", "[geometry]") {
  const Alphabet bin(2, 1), ter(3, 1), pairs(2, 2);
  CHECK(interval(nu_k(bin, Word{1}), 2) == std::pair<Rational, Rational>{Rational(1, 2), Rational(1)});
  CHECK(interval(nu_k(ter, Word{0, 2}), 3) == std::pair<Rational, Rational>{Rational(2, 9), Rational(3, 9)});
  const Box b = nu_k(pairs, std::vector<DigitVector>{DigitVector(std::vector<unsigned>{1, 0})});
  CHECK(b.corner == std::vector<std::uint64_t>{1, 0});
  const auto bounds = box_bounds(b, 2);
  CHECK(bounds[0] == std::pair<Rational, Rational>{Rational(1, 2), Rational(1)});
  CHECK(bounds[1] == std::pair<Rational, Rational>{Rational(0), Rational(1, 2)});
  CHECK(nu_k(bin, Word{}).depth == 0);
  CHECK(interval(nu_k(bin, Word{}), 2) == std::pair<Rational, Rational>{Rational(0), Rational(1)});
  CHECK(code_of([&] { nu_k(bin, Word{2}); }) == ErrorCode::digit_range);
  CHECK(code_of([&] { nu_k(bin, Word(70, 0)); }) == ErrorCode::cap_exceeded);
}

TEST_CASE("nu_k endpoints are truncated expansions", "[geometry][property]") {
  std::mt19937_64 rng(41);
  for (unsigned k : {2u, 3u, 5u}) {
    const Alphabet al(k, 1);
    std::uniform_int_distribution<unsigned> digit(0, k - 1);
    for (int trial = 0; trial < 20; ++trial) {
      Word w(trial % 9);
      for (auto& s : w) s = digit(rng);
      Rational sum = 0, scale = 1;
      for (Symbol s : w) {
        scale /= k;
        sum += Rational(s) * scale;
      }
      const auto [lo, hi] = interval(nu_k(al, w), k);
      CHECK(lo == sum);
      CHECK(hi - lo == scale);
    }
  }
}

TEST_CASE("box_cover", "[geometry]") {
  const auto c = box_cover(cantor(), 2);
  REQUIRE(c.size() == 4);
  std::vector<std::uint64_t> corners;
  for (const Box& b : c) corners.push_back(b.corner[0]);
  CHECK(corners == std::vector<std::uint64_t>{0, 2, 6, 8});

  const auto f = box_cover(full(), 1);
  REQUIRE(f.size() == 2);
  CHECK(interval(f[0], 2).second == interval(f[1], 2).first);

  const auto d = box_cover(dyadic(), 3);
  REQUIRE(d.size() == 8);
  for (std::uint64_t z = 0; z < 8; ++z) CHECK(d[z].corner[0] == z);

  CHECK(code_of([] { box_cover(full(), 30); }) == ErrorCode::cap_exceeded);
}

TEST_CASE("box_count_oracle", "[geometry]") {
  CHECK(box_count_oracle(cantor(), 3) == 8);
  CHECK(box_count_oracle(full(), 4) == 16);
  CHECK(box_count_oracle(single_loop(), 5) == 1);
  CHECK(box_count_oracle(product_cantor(), 2) == 16);
}

TEST_CASE("estimate_box_dimension", "[geometry]") {
  CHECK_THAT(estimate_box_dimension(cantor(), 4, 10), WithinAbs(kCantorDim, 0.01));
  CHECK_THAT(estimate_box_dimension(cantor(), 4, 10), WithinAbs(kCantorDim, 1e-12));
  CHECK(estimate_box_dimension(full(), 2, 8) == 1.0);
  CHECK_THAT(estimate_box_dimension(dyadic(), 4, 12), WithinAbs(1.0, 0.01));
  CHECK(code_of([] { estimate_box_dimension(cantor(), 5, 5); }) == ErrorCode::usage);
  CHECK(code_of([] { estimate_box_dimension(full(), 4, 40); }) == ErrorCode::cap_exceeded);
}

TEST_CASE("render", "[geometry]") {
  CHECK(render(cantor(), 2, RenderFormat::interval_list) == "0/1 1/9\n2/9 1/3\n2/3 7/9\n8/9 1/1\n");
  CHECK(render(full(), 1, RenderFormat::interval_list) == "0/1 1/1\n");
  CHECK(render(product_cantor(), 1, RenderFormat::bitmap) == "P1\n3 3\n101\n000\n101\n");
  CHECK(render(cantor(), 1, RenderFormat::bitmap) == "P1\n3 1\n101\n");
  CHECK(code_of([] { render(product_cantor(), 1, RenderFormat::interval_list); }) == ErrorCode::arity);
  AutomatonBuilder b(2, 3);
  auto q = b.add_state("q", true, true);
  b.add(q, {0, 0, 0}, q);
  const Automaton cube = b.build();
  CHECK(code_of([&] { render(cube, 1, RenderFormat::bitmap); }) == ErrorCode::arity);
  CHECK(render(middle_gap(), 3, RenderFormat::bitmap) == render(middle_gap(), 3, RenderFormat::bitmap));
}

TEST_CASE("cover properties on random automata", "[geometry][property]") {
  std::mt19937_64 rng(42);
  RandomSpec det;
  det.deterministic = true;
  for (int trial = 0; trial < 30; ++trial) {
    const bool deterministic = trial % 2 == 0;
    const Automaton a = random_trim(rng, deterministic ? det : RandomSpec{});
    const std::size_t n = 6;
    const auto cover = box_cover(a, n);

    for (int sample = 0; sample < 20; ++sample) {
      const Box b = nu_k(a.alphabet(), random_walk(a, n, rng));
      CHECK(std::binary_search(cover.begin(), cover.end(), b));
    }

    const auto coarse = box_cover(a, n - 1);
    for (const Box& b : box_cover(a, n)) {
      Box parent{n - 1, b.corner};
      for (auto& z : parent.corner) z /= a.base();
      CHECK(std::binary_search(coarse.begin(), coarse.end(), parent));
    }

    if (deterministic) {
      const GrowthSequence g = prefix_growth(a, 8);
      for (std::size_t m = 0; m <= 8; ++m) CHECK(box_count_oracle(a, m) == g[m]);
    }

    Rational total = 0;
    std::istringstream lines(render_intervals(a, n));
    std::string lo, hi;
    Rational previous_hi = -1;
    while (lines >> lo >> hi) {
      const Rational l = parse_rational(lo), h = parse_rational(hi);
      CHECK(l > previous_hi);
      previous_hi = h;
      total += h - l;
    }
    CHECK(total == Rational(cover.size()) / Rational(grid_size(a.base(), n)));
  }
}

TEST_CASE("estimates agree with the analytic box dimension on bundled automata", "[geometry][property]") {
  for (const std::string& name : bundled_names()) {
    const Automaton a = load_automaton(data_path(name));
    INFO(name);
    CHECK_THAT(estimate_box_dimension(a, 4, 12), WithinAbs(box_dimension(a), 0.05));
  }
}
