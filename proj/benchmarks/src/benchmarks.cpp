#include <benchmark/benchmark.h>

#include <random>

#include "treq/quiver.hpp"
#include "treq/rep.hpp"
#include "treq/zmod.hpp"

namespace {

using namespace treq;

MatZm random_matrix(std::int64_t m, int rows, int cols, std::mt19937_64& rng) {
  MatZm a(m, rows, cols);
  std::uniform_int_distribution<std::int64_t> dist(0, m - 1);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) a.set(i, j, dist(rng));
  return a;
}

RationalTreeScheme binary_scheme() {
  return RationalTreeScheme({"s"},
                            {{"l", "s", "s"}, {"r", "s", "s"}},
                            "s");
}

void bm_solve_linear(benchmark::State& state) {
  const auto n = static_cast<int>(state.range(0));
  std::mt19937_64 rng(7);
  const MatZm a = random_matrix(12, n, n, rng);
  std::vector<std::int64_t> b(static_cast<std::size_t>(n), 1);
  for (auto _ : state) {
    auto sol = solve_linear(a, b);
    benchmark::DoNotOptimize(sol);
  }
}
BENCHMARK(bm_solve_linear)->Arg(8)->Arg(16)->Arg(32);

void bm_hom_count(benchmark::State& state) {
  const auto depth = static_cast<int>(state.range(0));
  const FiniteQuiver tree = unfold(binary_scheme(), depth);
  const Modulus mod = make_modulus(2);
  const Representation x =
      stalk_functor("()", FgModule::free(1, 2), tree, mod);
  const auto [hull, embed] = injective_envelope(x);
  for (auto _ : state) {
    auto count = hom_count(x, hull);
    benchmark::DoNotOptimize(count);
  }
}
BENCHMARK(bm_hom_count)->Arg(3)->Arg(4);

void bm_is_barren(benchmark::State& state) {
  std::mt19937_64 rng(101);
  std::vector<RationalTreeScheme> schemes;
  for (int k = 0; k < 16; ++k) {
    const int n = 3 + static_cast<int>(rng() % 4);
    std::vector<std::string> states;
    for (int i = 0; i < n; ++i) states.push_back("s" + std::to_string(i));
    std::vector<Transition> transitions;
    int id = 0;
    // spanning transitions first, so every state stays reachable from the root
    for (int i = 1; i < n; ++i)
      transitions.push_back({"t" + std::to_string(id++), states[rng() % static_cast<std::size_t>(i)],
                             states[static_cast<std::size_t>(i)]});
    for (int i = 0; i < n; ++i) {
      const int fanout = 1 + static_cast<int>(rng() % 2);
      for (int f = 0; f < fanout; ++f)
        transitions.push_back({"t" + std::to_string(id++), states[static_cast<std::size_t>(i)],
                               states[rng() % static_cast<std::size_t>(n)]});
    }
    schemes.emplace_back(states, transitions, "s0");
  }
  for (auto _ : state) {
    for (const auto& s : schemes) {
      auto cert = is_barren(s);
      benchmark::DoNotOptimize(cert);
    }
  }
}
BENCHMARK(bm_is_barren);

void bm_injective_envelope(benchmark::State& state) {
  const auto depth = static_cast<int>(state.range(0));
  const FiniteQuiver tree = unfold(binary_scheme(), depth);
  const Modulus mod = make_modulus(2);
  const Representation x =
      stalk_functor("()", FgModule::free(1, 2), tree, mod);
  for (auto _ : state) {
    auto hull = injective_envelope(x);
    benchmark::DoNotOptimize(hull);
  }
}
BENCHMARK(bm_injective_envelope)->Arg(3)->Arg(4);

void bm_unfold(benchmark::State& state) {
  const auto depth = static_cast<int>(state.range(0));
  const RationalTreeScheme s = binary_scheme();
  for (auto _ : state) {
    auto tree = unfold(s, depth);
    benchmark::DoNotOptimize(tree);
  }
}
BENCHMARK(bm_unfold)->Arg(6)->Arg(8);

}  // namespace

BENCHMARK_MAIN();
