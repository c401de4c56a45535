#include "randlab/coding/w2r.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <utility>

#include "randlab/coding/kucera_gacs.hpp"
#include "randlab/core/error.hpp"
#include "randlab/staged/pairing.hpp"

namespace randlab::coding {

OpenFamily::OpenFamily(std::vector<StagedOpenSet> levels) : levels_(std::move(levels)) {
  std::set<Stage> stages{0};
  for (const auto& u : levels_)
    for (Stage s : u.growth_stages()) stages.insert(s);
  for (std::size_t k = 0; k + 1 < levels_.size(); ++k)
    for (Stage s : stages)
      if (!is_subset(levels_[k + 1].at(s), levels_[k].at(s)))
        throw InvariantViolation("open family: level " + std::to_string(k + 1) + " not inside level " +
                                 std::to_string(k) + " at stage " + std::to_string(s));
}

Stage OpenFamily::horizon() const noexcept {
  Stage h = 0;
  for (const auto& u : levels_) h = std::max(h, u.horizon());
  return h;
}

std::optional<std::size_t> g_lsc(const OpenFamily& family, const BitString& sigma, const Pi01Tree& p, Stage t) {
  const CylinderSet inside = p.class_at(t).restrict_to(sigma);
  for (std::size_t k = 0; k < family.size(); ++k)
    if (!subtract(inside, family.level(k).at(t)).empty()) return k;
  return std::nullopt;
}

Stage W2RScheme::horizon() const {
  Stage h = base.horizon();
  for (const auto& f : families) h = std::max(h, f.horizon());
  return h;
}

void W2RScheme::validate() const {
  for (std::size_t i = 1; i < star.size(); ++i)
    if (star[i] <= star[i - 1]) throw InvariantViolation("scheme: star indices must increase");
  for (std::uint64_t e : star)
    if (e >= families.size())
      throw InvariantViolation("scheme: star index " + std::to_string(e) + " has no family");
  for (const auto& f : families)
    for (const auto& u : f.levels())
      if (u.final().max_length() > base.depth())
        throw InvariantViolation("scheme: family string longer than the base tree depth");
}

W2REncoding w2r_encode(const std::vector<BitString>& payloads, const W2RScheme& scheme) {
  scheme.validate();
  if (payloads.size() > scheme.star.size())
    throw Error("w2r_encode: " + std::to_string(payloads.size()) + " payloads but only " +
                std::to_string(scheme.star.size()) + " star indices");
  const Stage last = scheme.horizon();
  W2REncoding out;
  out.classes.push_back(scheme.base);
  BitString tau;
  for (std::size_t n = 0; n < payloads.size(); ++n) {
    const std::uint64_t e = scheme.star[n];
    const Pi01Tree& p = out.classes.back();
    tau = kg_encode(tuple_encode(e, payloads[n]), tau, p);
    const auto g = g_lsc(scheme.families[e], tau, p, last);
    if (!g) throw Error("w2r_encode: no level of family " + std::to_string(e) + " leaves room above " + tau.str());
    out.codewords.push_back(tau);
    out.levels.push_back(*g);
    out.classes.push_back(p.minus(scheme.families[e].level(*g)));
  }
  out.codeword = tau;
  return out;
}

std::vector<bool> avoidance(const W2REncoding& enc, const W2RScheme& scheme) {
  std::vector<bool> out;
  for (std::size_t n = 0; n < enc.levels.size(); ++n) {
    const CylinderSet& cls = enc.classes[n + 1].final_class();
    const StagedOpenSet& u = scheme.families[scheme.star[n]].level(enc.levels[n]);
    out.push_back(intersect(cls, u.final()).empty() && cls.meets(enc.codeword));
  }
  return out;
}

BitString GammaResult::defined_prefix() const {
  BitString out;
  for (const auto& bit : output) {
    if (!bit) break;
    out.push_back(*bit);
  }
  return out;
}

std::size_t GammaResult::defined_count() const {
  return static_cast<std::size_t>(std::count_if(output.begin(), output.end(), [](const auto& b) { return b.has_value(); }));
}

GammaResult gamma_decode(const BitString& x, Stage t_max, const W2RScheme& scheme) {
  scheme.validate();
  const Stage last = scheme.horizon();
  // Classes and decodings depend only on the (index, level) path so far.
  using Path = std::vector<std::pair<std::uint64_t, std::size_t>>;
  std::map<Path, Pi01Tree> classes{{Path{}, scheme.base}};
  std::map<Path, std::optional<DecodedPrefix>> decodings;

  GammaResult result;
  for (Stage t = 0; t <= t_max; ++t) {
    GammaRun run{t, {}, {}, {}, {}};
    Path path;
    BitString current;
    while (true) {
      const Pi01Tree& q = classes.at(path);
      auto found = decodings.find(path);
      if (found == decodings.end()) found = decodings.emplace(path, kg_decode_prefix(x, current, q, last)).first;
      if (!found->second) break;
      const auto tuple = tuple_decode(found->second->payload);
      if (!tuple || tuple->first >= scheme.families.size()) break;
      current = found->second->codeword;
      run.codewords.push_back(current);
      run.indices.push_back(tuple->first);
      run.decoded.append(tuple->second);
      const OpenFamily& family = scheme.families[tuple->first];
      const auto g = g_lsc(family, current, q, t);
      run.levels.push_back(g);
      if (!g) break;
      Path next = path;
      next.emplace_back(tuple->first, *g);
      if (!classes.count(next)) classes.emplace(next, q.minus(family.level(*g)));
      path = std::move(next);
    }
    const std::size_t reach = std::min<std::size_t>(std::size_t{t} + 1, run.decoded.size());
    if (result.output.size() < reach) {
      result.output.resize(reach);
      result.defined_at.resize(reach);
    }
    for (std::size_t i = 0; i < reach; ++i) {
      if (result.output[i]) continue;
      result.output[i] = run.decoded[i];
      result.defined_at[i] = t;
    }
    result.runs.push_back(std::move(run));
  }
  return result;
}

Stabilization stabilization_stage(const std::vector<BitString>& payloads, const W2RScheme& scheme,
                                  std::optional<std::size_t> count) {
  const std::size_t k = std::min(count.value_or(payloads.size()), payloads.size());
  const std::vector<BitString> head(payloads.begin(), payloads.begin() + static_cast<std::ptrdiff_t>(k));
  const W2REncoding enc = w2r_encode(head, scheme);
  const Stage last = scheme.horizon();
  Stabilization out;
  for (std::size_t n = 0; n < k; ++n) {
    const OpenFamily& family = scheme.families[scheme.star[n]];
    Stage from = last;
    while (from > 0 && g_lsc(family, enc.codewords[n], enc.classes[n], from - 1) == enc.levels[n]) --from;
    // t = horizon always gives the final value; the scan above finds where it settles.
    out.per_codeword.push_back(from);
    out.stage = std::max(out.stage, from);
  }
  return out;
}

DecodeCheck check_decoding(const std::vector<BitString>& payloads, const W2RScheme& scheme) {
  DecodeCheck out;
  for (const auto& p : payloads) out.xi.append(p);
  out.stabilization = stabilization_stage(payloads, scheme).stage;
  const W2REncoding enc = w2r_encode(payloads, scheme);
  const Stage t_max = static_cast<Stage>(std::max<std::size_t>(out.xi.size(), out.stabilization) + 1);
  const GammaResult gamma = gamma_decode(enc.codeword, t_max, scheme);
  for (std::size_t i = 0; i < out.xi.size(); ++i) {
    if (i >= gamma.output.size() || !gamma.output[i]) {
      ++out.undefined;
      continue;
    }
    ++out.defined;
    if (*gamma.output[i] != out.xi[i]) {
      ++out.disagreements;
      if (i >= out.stabilization) ++out.disagreements_at_or_above;
    }
  }
  return out;
}

CylinderSet DenseOpen::build() const {
  if (lo > hi) throw Error("dense open: window [" + std::to_string(lo) + ", " + std::to_string(hi) + "] is empty");
  const std::size_t w = pattern.size();
  std::vector<BitString> minimal;
  // Depth-first over prefixes; a string is kept at the first window occurrence.
  std::vector<BitString> stack{BitString{}};
  while (!stack.empty()) {
    BitString s = std::move(stack.back());
    stack.pop_back();
    if (s.size() >= lo + w && s.size() - w <= hi && pattern.is_prefix_of(s.suffix_from(s.size() - w))) {
      minimal.push_back(std::move(s));
      continue;
    }
    if (s.size() >= hi + w) continue;
    if (minimal.size() + stack.size() > (std::size_t{1} << 22)) throw GuardExceeded("dense open: too many cylinders");
    stack.push_back(s.with_bit(1));
    stack.push_back(s.with_bit(0));
  }
  return CylinderSet::normalize(std::move(minimal));
}

std::string DenseOpen::describe() const {
  return pattern.str() + "@[" + std::to_string(lo) + "," + std::to_string(hi) + "]";
}

std::optional<BitString> density_witness(const CylinderSet& u, std::size_t depth) {
  // Iterative deepening, 0-branch first, so the witness is length-lex first.
  std::optional<BitString> witness;
  for (std::size_t d = 0; d <= depth && !witness; ++d) {
    std::size_t visited = 0;
    auto visit = [&](auto&& self, const BitString& eta) -> void {
      if (witness || u.contains_prefix_of(eta)) return;
      if (!u.meets(eta)) {
        witness = eta;
        return;
      }
      if (eta.size() >= d) return;
      if (++visited > (std::size_t{1} << 22)) throw GuardExceeded("density check: too many nodes");
      self(self, eta.with_bit(0));
      self(self, eta.with_bit(1));
    };
    visit(visit, BitString{});
  }
  return witness;
}

CylinderSet common_extensions(const CylinderSet& u, std::size_t n) {
  std::map<std::pair<std::string, std::size_t>, CylinderSet> memo;
  auto go = [&](auto&& self, const CylinderSet& c, std::size_t d) -> CylinderSet {
    if (d == 0 || c.empty() || c == CylinderSet::full()) return c;
    const auto key = std::make_pair(c.str(), d);
    if (auto it = memo.find(key); it != memo.end()) return it->second;
    CylinderSet out = intersect(self(self, c.shifted_by(BitString("0")), d - 1),
                                self(self, c.shifted_by(BitString("1")), d - 1));
    memo.emplace(key, out);
    return out;
  };
  return go(go, u, n);
}

Extension extend_into_open(const std::vector<BitString>& payloads, const CylinderSet& u, const W2RScheme& scheme) {
  BitString prefix;
  for (const auto& p : payloads) prefix.append(p);
  Extension out;
  out.n = std::max<std::size_t>(stabilization_stage(payloads, scheme).stage, prefix.size());
  if (auto eta = density_witness(u, out.n))
    throw InvariantViolation("open set has no extension above " + eta->str() + " (needed to depth " +
                             std::to_string(out.n) + ")");
  const CylinderSet common = common_extensions(u, out.n);
  if (common.empty())
    throw InvariantViolation("no common extension of all shifts of depth " + std::to_string(out.n));
  const auto& chain = common.antichain();
  out.zeta = *std::min_element(chain.begin(), chain.end(), [](const BitString& a, const BitString& b) {
    return a.size() != b.size() ? a.size() < b.size() : a < b;
  });
  out.next_payload = BitString::zeros(out.n - prefix.size()) + out.zeta;
  return out;
}

namespace {

StagedOpenSet random_level(std::mt19937_64& rng, const SchemeParams& params, const Enumerator* parent) {
  std::vector<StagedString> entries;
  for (std::size_t i = 0; i < params.strings_per_level; ++i) {
    if (parent == nullptr) {
      const std::size_t len = 1 + draw_below(rng, params.max_base_length);
      const auto stage = static_cast<Stage>(draw_below(rng, std::uint64_t{params.horizon} + 1));
      entries.push_back({stage, random_string(rng, len)});
    } else {
      if (parent->empty()) break;
      const auto& from = parent->entries()[draw_below(rng, parent->entries().size())];
      const std::size_t extra = draw_below(rng, 4);
      const auto stage =
          static_cast<Stage>(from.stage + draw_below(rng, std::uint64_t{params.horizon} - from.stage + 1));
      entries.push_back({stage, from.string + random_string(rng, extra)});
    }
  }
  return StagedOpenSet(Enumerator(std::move(entries), params.horizon));
}

}  // namespace

W2RScheme random_scheme(std::mt19937_64& rng, const SchemeParams& params) {
  if (params.levels == 0) throw Error("random_scheme: need at least one level");
  TreeParams tp;
  tp.depth = params.tree_depth;
  tp.removal_attempts = params.removal_attempts;
  tp.min_removal_length = params.min_removal_length;
  tp.max_removal_length = params.max_removal_length;
  tp.horizon = params.horizon;
  W2RScheme scheme;
  scheme.base = random_tree(rng, tp);
  for (std::size_t e = 0; e < params.families; ++e) {
    std::vector<StagedOpenSet> levels;
    for (std::size_t k = 0; k + 1 < params.levels; ++k)
      levels.push_back(random_level(rng, params, k == 0 ? nullptr : &levels.back().enumerator()));
    levels.push_back(StagedOpenSet(Enumerator({}, params.horizon)));
    scheme.families.emplace_back(std::move(levels));
    scheme.star.push_back(e);
  }
  return scheme;
}

}  // namespace randlab::coding
