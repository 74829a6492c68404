#include "mauto/letter_dfa.hpp"

#include <deque>
#include <map>

namespace mauto {

LetterDfa::LetterDfa(int alphabet_, int states)
    : alphabet(alphabet_), delta(static_cast<std::size_t>(states * alphabet_), 0), final(static_cast<std::size_t>(states), 0) {}

bool LetterDfa::accepts(const std::vector<int>& word) const {
  int s = start;
  for (int l : word) s = next(s, l);
  return final[static_cast<std::size_t>(s)] != 0;
}

LetterDfa LetterDfa::constant(int alphabet, bool accept) {
  LetterDfa d(alphabet, 1);
  d.final[0] = accept;
  return d;
}

LetterDfa LetterDfa::complemented() const {
  LetterDfa d = *this;
  for (auto& f : d.final) f = !f;
  return d;
}

LetterDfa LetterDfa::product(const LetterDfa& a, const LetterDfa& b, bool conj) {
  std::map<std::pair<int, int>, int> ids;
  std::deque<std::pair<int, int>> queue;
  std::vector<std::pair<int, int>> order;
  auto id = [&](int p, int q) {
    auto [it, fresh] = ids.emplace(std::make_pair(p, q), static_cast<int>(order.size()));
    if (fresh) {
      order.emplace_back(p, q);
      queue.emplace_back(p, q);
    }
    return it->second;
  };
  id(a.start, b.start);
  std::vector<std::vector<int>> rows;
  while (!queue.empty()) {
    auto [p, q] = queue.front();
    queue.pop_front();
    std::vector<int> row;
    for (int l = 0; l < a.alphabet; ++l) row.push_back(id(a.next(p, l), b.next(q, l)));
    rows.push_back(std::move(row));
  }
  LetterDfa d(a.alphabet, static_cast<int>(order.size()));
  for (std::size_t s = 0; s < order.size(); ++s) {
    const bool fa = a.final[static_cast<std::size_t>(order[s].first)];
    const bool fb = b.final[static_cast<std::size_t>(order[s].second)];
    d.final[s] = conj ? (fa && fb) : (fa || fb);
    for (int l = 0; l < a.alphabet; ++l) d.set(static_cast<int>(s), l, rows[s][static_cast<std::size_t>(l)]);
  }
  return d.minimized();
}

LetterDfa LetterDfa::project_bit(int bit) const {
  const int mask = 1 << bit;
  std::map<std::vector<int>, int> ids;
  std::deque<std::vector<int>> queue;
  std::vector<std::vector<int>> order;
  auto id = [&](std::vector<int> set) {
    auto [it, fresh] = ids.emplace(set, static_cast<int>(order.size()));
    if (fresh) {
      order.push_back(set);
      queue.push_back(std::move(set));
    }
    return it->second;
  };
  id({start});
  std::vector<std::vector<int>> rows;
  while (!queue.empty()) {
    const auto set = queue.front();
    queue.pop_front();
    std::vector<int> row;
    for (int l = 0; l < alphabet; ++l) {
      std::vector<char> hit(static_cast<std::size_t>(states()), 0);
      for (int s : set) {
        hit[static_cast<std::size_t>(next(s, l & ~mask))] = 1;
        hit[static_cast<std::size_t>(next(s, l | mask))] = 1;
      }
      std::vector<int> succ;
      for (int s = 0; s < states(); ++s)
        if (hit[static_cast<std::size_t>(s)]) succ.push_back(s);
      row.push_back(id(std::move(succ)));
    }
    rows.push_back(std::move(row));
  }
  LetterDfa d(alphabet, static_cast<int>(order.size()));
  for (std::size_t s = 0; s < order.size(); ++s) {
    for (int q : order[s])
      if (final[static_cast<std::size_t>(q)]) d.final[s] = 1;
    for (int l = 0; l < alphabet; ++l) d.set(static_cast<int>(s), l, rows[s][static_cast<std::size_t>(l)]);
  }
  return d.minimized();
}

LetterDfa LetterDfa::minimized() const {
  // Reachable states first.
  std::vector<int> reach_id(static_cast<std::size_t>(states()), -1);
  std::vector<int> order{start};
  reach_id[static_cast<std::size_t>(start)] = 0;
  for (std::size_t i = 0; i < order.size(); ++i)
    for (int l = 0; l < alphabet; ++l) {
      const int t = next(order[i], l);
      if (reach_id[static_cast<std::size_t>(t)] < 0) {
        reach_id[static_cast<std::size_t>(t)] = static_cast<int>(order.size());
        order.push_back(t);
      }
    }
  // Moore refinement.
  const auto n = order.size();
  std::vector<int> cls(n);
  for (std::size_t i = 0; i < n; ++i) cls[i] = final[static_cast<std::size_t>(order[i])] ? 1 : 0;
  int count = 0;
  for (;;) {
    std::map<std::vector<int>, int> sig;
    std::vector<int> next_cls(n);
    for (std::size_t i = 0; i < n; ++i) {
      std::vector<int> key{cls[i]};
      for (int l = 0; l < alphabet; ++l) key.push_back(cls[static_cast<std::size_t>(reach_id[static_cast<std::size_t>(next(order[i], l))])]);
      next_cls[i] = sig.emplace(std::move(key), static_cast<int>(sig.size())).first->second;
    }
    const int c = static_cast<int>(sig.size());
    cls = std::move(next_cls);
    if (c == count) break;
    count = c;
  }
  // Renumber classes in order of first appearance so the start is 0.
  std::vector<int> renum(static_cast<std::size_t>(count), -1);
  int k = 0;
  for (std::size_t i = 0; i < n; ++i)
    if (renum[static_cast<std::size_t>(cls[i])] < 0) renum[static_cast<std::size_t>(cls[i])] = k++;
  LetterDfa d(alphabet, k);
  d.start = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const int s = renum[static_cast<std::size_t>(cls[i])];
    d.final[static_cast<std::size_t>(s)] = final[static_cast<std::size_t>(order[i])];
    for (int l = 0; l < alphabet; ++l)
      d.set(s, l, renum[static_cast<std::size_t>(cls[static_cast<std::size_t>(reach_id[static_cast<std::size_t>(next(order[i], l))])])]);
  }
  return d;
}

}  // namespace mauto
