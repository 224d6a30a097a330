#include "wsc/generator.hpp"

#include <algorithm>
#include <random>
#include <string>

#include "wsc/errors.hpp"

namespace wsc {

namespace {

// mt19937_64 with hand-rolled bounded sampling, so streams do not depend on
// standard-library distribution internals.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  std::uint32_t below(std::uint32_t n) {  // uniform in [0, n)
    const std::uint64_t bound = ~std::uint64_t{0} - ~std::uint64_t{0} % n;
    for (;;) {
      const std::uint64_t x = eng_();
      if (x < bound) return static_cast<std::uint32_t>(x % n);
    }
  }

  std::uint32_t range(std::uint32_t lo, std::uint32_t hi) {  // inclusive
    return lo + below(hi - lo + 1);
  }

  bool chance(double p) {
    return (eng_() >> 11) * 0x1.0p-53 < p;
  }

  // k distinct elements of pool, order randomized.
  template <typename T>
  std::vector<T> sample(std::vector<T> pool, std::uint32_t k) {
    std::vector<T> out;
    out.reserve(k);
    for (std::uint32_t i = 0; i < k && !pool.empty(); ++i) {
      const std::uint32_t at = below(static_cast<std::uint32_t>(pool.size()));
      out.push_back(pool[at]);
      pool[at] = pool.back();
      pool.pop_back();
    }
    return out;
  }

 private:
  std::mt19937_64 eng_;
};

std::string padded(const char* prefix, std::uint32_t i, std::size_t total) {
  std::string digits = std::to_string(total == 0 ? 1 : total - 1);
  std::string n = std::to_string(i);
  return prefix + std::string(digits.size() - n.size(), '0') + n;
}

}  // namespace

ProblemBundle generate(std::uint64_t seed, const GenParams& p) {
  if (p.services == 0) throw ValidationError("generator needs at least one service");
  if (p.concepts == 0) throw ValidationError("generator needs at least one concept");
  if (p.provided == 0 || p.provided > p.concepts)
    throw ValidationError("provided count must be in [1, concepts]");
  if (p.wanted == 0) throw ValidationError("wanted count must be positive");
  if (p.min_inputs > p.max_inputs || p.min_outputs > p.max_outputs)
    throw ValidationError("parameter ranges are inverted");
  if (p.max_outputs == 0)
    throw ValidationError("services must produce at least one output");
  const std::uint32_t depth = std::min(p.depth, p.services);
  if (p.solvable && depth == 0)
    throw ValidationError("planted chain needs a positive depth");

  Rng rng(seed);

  std::vector<ConceptDecl> concepts(p.concepts);
  for (std::uint32_t i = 0; i < p.concepts; ++i) {
    concepts[i].id = padded("k", i, p.concepts);
    if (i > 0 && rng.chance(p.parent_prob))
      concepts[i].parent = concepts[rng.below(i)].id;
  }

  std::vector<std::string> all_names(p.concepts);
  for (std::uint32_t i = 0; i < p.concepts; ++i) all_names[i] = concepts[i].id;

  RequestDecl request;
  request.provided = rng.sample(all_names, p.provided);

  // Unused concepts feed the planted chain's fresh outputs.
  std::vector<std::string> fresh_pool;
  {
    std::vector<char> used(p.concepts, 0);
    for (const auto& name : request.provided)
      for (std::uint32_t i = 0; i < p.concepts; ++i)
        if (all_names[i] == name) used[i] = 1;
    for (std::uint32_t i = 0; i < p.concepts; ++i)
      if (!used[i]) fresh_pool.push_back(all_names[i]);
  }
  auto take_fresh = [&](std::uint32_t k) {
    if (fresh_pool.size() < k)
      throw ValidationError(
          "concept budget too small for the planted chain; raise `concepts`");
    std::vector<std::string> out;
    for (std::uint32_t i = 0; i < k; ++i) {
      const std::uint32_t at = rng.below(static_cast<std::uint32_t>(fresh_pool.size()));
      out.push_back(fresh_pool[at]);
      fresh_pool[at] = fresh_pool.back();
      fresh_pool.pop_back();
    }
    return out;
  };

  // Roles are spread over shuffled ids so the chain is not always s0..sD.
  std::vector<std::uint32_t> role(p.services);
  for (std::uint32_t i = 0; i < p.services; ++i) role[i] = i;
  for (std::uint32_t i = p.services - 1; i > 0; --i)
    std::swap(role[i], role[rng.below(i + 1)]);

  std::vector<ServiceDecl> services(p.services);
  for (std::uint32_t i = 0; i < p.services; ++i)
    services[i].id = padded("s", i, p.services);

  std::vector<std::string> planted_ids;
  if (p.solvable) {
    std::vector<std::string> reachable = request.provided;
    std::vector<std::string> prev_fresh = request.provided;
    for (std::uint32_t d = 0; d < depth; ++d) {
      ServiceDecl& sv = services[role[d]];
      const bool last = d + 1 == depth;
      const std::uint32_t out_count =
          std::max(last ? p.wanted : 1u, rng.range(p.min_outputs, p.max_outputs));
      const std::uint32_t in_count = std::max(
          1u, std::min<std::uint32_t>(rng.range(p.min_inputs, p.max_inputs),
                                      static_cast<std::uint32_t>(reachable.size())));
      // Anchor each link to the previous stage so depth is real.
      sv.inputs = rng.sample(prev_fresh, 1);
      auto extra = rng.sample(reachable, in_count);
      for (auto& e : extra)
        if (std::find(sv.inputs.begin(), sv.inputs.end(), e) == sv.inputs.end() &&
            sv.inputs.size() < in_count)
          sv.inputs.push_back(std::move(e));
      sv.outputs = take_fresh(out_count);
      prev_fresh = sv.outputs;
      reachable.insert(reachable.end(), sv.outputs.begin(), sv.outputs.end());
      planted_ids.push_back(sv.id);
    }
    request.wanted = rng.sample(prev_fresh, p.wanted);
    if (request.wanted.size() < p.wanted)
      throw ValidationError("wanted count exceeds the final chain outputs");
  } else {
    request.wanted = rng.sample(all_names, std::min(p.wanted, p.concepts));
  }

  for (std::uint32_t i = p.solvable ? depth : 0; i < p.services; ++i) {
    ServiceDecl& sv = services[role[i]];
    const std::uint32_t in_count = rng.range(p.min_inputs, p.max_inputs);
    const std::uint32_t out_count = rng.range(std::max(1u, p.min_outputs), p.max_outputs);
    sv.inputs = rng.sample(all_names, std::min<std::uint32_t>(in_count, p.concepts));
    sv.outputs = rng.sample(all_names, std::min<std::uint32_t>(out_count, p.concepts));
  }

  BundleMeta meta;
  meta.name = "gen-" + std::to_string(seed);
  meta.source = "generator";
  meta.seed = seed;
  if (p.solvable && p.record_planted) meta.planted = planted_ids;

  return make_bundle(concepts, services, request, std::move(meta));
}

}  // namespace wsc
