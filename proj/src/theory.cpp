#include "mauto/theory.hpp"

namespace mauto {

void require_sentence(const Formula& sentence) {
  const auto fv = free_vars(sentence);
  if (!fv.empty()) throw Error("expected a sentence, but " + *fv.begin() + " is free");
}

void require_assigned(const Formula& f, const Assignment& a) {
  for (const auto& v : free_vars(f))
    if (!a.count(v)) throw Error("no value for free variable " + v);
}

}  // namespace mauto
