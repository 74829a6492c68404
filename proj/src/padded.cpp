#include "mauto/padded.hpp"

#include <algorithm>
#include <bit>

namespace mauto {

namespace {
const std::string kPadVar = "_pad";
constexpr std::size_t kEvalCacheLimit = std::size_t{1} << 20;
}

PaddedTheory::PaddedTheory(std::shared_ptr<const Theory> base, PadMode mode, Element pad, Formula pad_def)
    : base_(std::move(base)), mode_(mode), pad_(std::move(pad)), pad_def_(std::move(pad_def)) {}

std::shared_ptr<const PaddedTheory> PaddedTheory::fresh(std::shared_ptr<const Theory> base) {
  if (!base) throw Error("padded theory needs a base");
  return std::shared_ptr<const PaddedTheory>(
      new PaddedTheory(std::move(base), PadMode::Fresh, Element::padding(), Formula::falsity()));
}

std::shared_ptr<const PaddedTheory> PaddedTheory::alias(std::shared_ptr<const Theory> base, Element e) {
  if (!base) throw Error("padded theory needs a base");
  if (!base->contains(e)) throw Error("alias padding element is not in the domain of " + base->name());
  auto def = base->define_element(e, kPadVar);
  if (!def) throw Error("alias padding element " + base->format_element(e) + " is not definable in " + base->name());
  return std::shared_ptr<const PaddedTheory>(new PaddedTheory(std::move(base), PadMode::Alias, std::move(e), *def));
}

Formula PaddedTheory::rewrite_alias(const Formula& f) const {
  if (mode_ == PadMode::Fresh || !mentions_pad(f)) return f;
  using K = Formula::Kind;
  switch (f.kind()) {
    case K::Pad: {
      const Term& t = f.terms()[0];
      if (!t.is_var()) throw Error("padding predicate applied to a constant");
      return rename_free(pad_def_, {{kPadVar, t}});
    }
    case K::Not: return Formula::negation(rewrite_alias(f.child()));
    case K::And:
    case K::Or:
    case K::Implies: {
      std::vector<Formula> kids;
      for (const auto& c : f.children()) kids.push_back(rewrite_alias(c));
      if (f.kind() == K::And) return Formula::conj(std::move(kids));
      if (f.kind() == K::Or) return Formula::disj(std::move(kids));
      return Formula::implies(kids[0], kids[1]);
    }
    case K::Exists: return Formula::exists(f.symbol(), rewrite_alias(f.child()));
    case K::Forall: return Formula::forall(f.symbol(), rewrite_alias(f.child()));
    default: return f;
  }
}

bool PaddedTheory::decide(const Formula& sentence) const {
  require_sentence(sentence);
  if (mode_ == PadMode::Alias) return base_->decide(rewrite_alias(sentence));
  return base_->decide(eliminate_pad(sentence, {}));
}

std::size_t PaddedTheory::EvalKeyHash::operator()(const EvalKey& k) const {
  std::size_t h = k.f.hash();
  for (const auto& e : k.values) h ^= e.hash() + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  return h;
}

bool PaddedTheory::eval(const Formula& f, const Assignment& a) const {
  require_assigned(f, a);
  EvalKey key{f, {}};
  for (const auto& v : free_vars(f)) key.values.push_back(a.at(v));
  {
    std::lock_guard<std::mutex> lock(mu_);
    if (auto it = eval_cache_.find(key); it != eval_cache_.end()) return it->second;
  }
  const bool result = eval_uncached(f, a);
  std::lock_guard<std::mutex> lock(mu_);
  if (eval_cache_.size() > kEvalCacheLimit) eval_cache_.clear();
  eval_cache_.emplace(std::move(key), result);
  return result;
}

bool PaddedTheory::eval_uncached(const Formula& f, const Assignment& a) const {
  if (mode_ == PadMode::Alias) {
    Assignment b;
    for (const auto& v : free_vars(f)) {
      const auto& e = a.at(v);
      b[v] = e.is_padding() ? pad_ : e;
    }
    return base_->eval(rewrite_alias(f), b);
  }
  PadMask mask;
  Assignment proper;
  for (const auto& v : free_vars(f)) {
    const auto& e = a.at(v);
    if (e.is_padding()) {
      mask[v] = PadStatus::Padding;
    } else {
      mask[v] = PadStatus::Proper;
      proper[v] = e;
    }
  }
  return base_->eval(eliminate_pad(f, mask), proper);
}

namespace {

// Masks over k variables, fewest padding variables first.
std::vector<unsigned> masks_by_weight(std::size_t k) {
  if (k > 20) throw Error("too many variables for padding case analysis");
  std::vector<unsigned> out(std::size_t{1} << k);
  for (unsigned m = 0; m < out.size(); ++m) out[m] = m;
  std::stable_sort(out.begin(), out.end(), [](unsigned a, unsigned b) { return std::popcount(a) < std::popcount(b); });
  return out;
}

}  // namespace

bool PaddedTheory::satisfiable(const Formula& f) const {
  {
    std::lock_guard<std::mutex> lock(mu_);
    if (auto it = sat_cache_.find(f); it != sat_cache_.end()) return it->second;
  }
  bool result = false;
  if (mode_ == PadMode::Alias) {
    result = base_->satisfiable(rewrite_alias(f));
  } else {
    const auto fv = free_vars(f);
    const std::vector<std::string> vars(fv.begin(), fv.end());
    for (unsigned m : masks_by_weight(vars.size())) {
      PadMask mask;
      for (std::size_t i = 0; i < vars.size(); ++i) mask[vars[i]] = (m >> i) & 1 ? PadStatus::Padding : PadStatus::Proper;
      if (base_->satisfiable(eliminate_pad(f, mask))) {
        result = true;
        break;
      }
    }
  }
  std::lock_guard<std::mutex> lock(mu_);
  sat_cache_.emplace(f, result);
  return result;
}

std::optional<Assignment> PaddedTheory::find_witness(const Formula& f, const std::vector<std::string>& vars) const {
  if (mode_ == PadMode::Alias) return base_->find_witness(rewrite_alias(f), vars);
  for (unsigned m : masks_by_weight(vars.size())) {
    PadMask mask;
    std::vector<std::string> proper;
    for (std::size_t i = 0; i < vars.size(); ++i) {
      const bool pad = (m >> i) & 1;
      mask[vars[i]] = pad ? PadStatus::Padding : PadStatus::Proper;
      if (!pad) proper.push_back(vars[i]);
    }
    const Formula g = eliminate_pad(f, mask);
    if (auto w = base_->find_witness(g, proper)) {
      for (std::size_t i = 0; i < vars.size(); ++i)
        if ((m >> i) & 1) (*w)[vars[i]] = Element::padding();
      return w;
    }
  }
  return std::nullopt;
}

bool PaddedTheory::contains(const Element& e) const {
  if (e.is_padding()) return mode_ == PadMode::Fresh;
  return base_->contains(e);
}

Element PaddedTheory::parse_element(const std::string& text) const {
  if (text == "#") return mode_ == PadMode::Fresh ? Element::padding() : pad_;
  return base_->parse_element(text);
}

std::string PaddedTheory::format_element(const Element& e) const {
  if (e.is_padding()) return "#";
  return base_->format_element(e);
}

std::string PaddedTheory::pad_spec() const {
  if (mode_ == PadMode::Fresh) return "pad fresh";
  return "pad alias " + base_->format_element(pad_);
}

bool PaddedTheory::compatible(const PaddedTheory& other) const {
  if (this == &other) return true;
  return base_->name() == other.base_->name() && base_->signature() == other.base_->signature() &&
         mode_ == other.mode_ && pad_ == other.pad_;
}

}  // namespace mauto
