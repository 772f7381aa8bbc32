#include "lcsfrogs/frogs.hpp"

#include <algorithm>
#include <functional>

#include "lcsfrogs/error.hpp"

namespace lcsfrogs {

FrogArrangement::FrogArrangement(std::vector<int> pad_of) : pad_of_(std::move(pad_of)) {
  const int k = static_cast<int>(pad_of_.size());
  if (k < 1) throw Error("an arrangement needs at least one frog");
  std::vector<bool> seen(k, false);
  for (int p : pad_of_) {
    if (p < 0 || p >= k || seen[p]) throw Error("frog arrangement is not a bijection");
    seen[p] = true;
  }
}

FrogArrangement FrogArrangement::empty(int k) {
  std::vector<int> p(k);
  for (int i = 0; i < k; ++i) p[i] = i;
  return FrogArrangement(std::move(p));
}

int FrogArrangement::frog_on(int pad) const {
  auto it = std::find(pad_of_.begin(), pad_of_.end(), pad);
  if (it == pad_of_.end()) throw Error("no such pad");
  return static_cast<int>(it - pad_of_.begin()) + 1;
}

std::size_t FrogArrangementHash::operator()(const FrogArrangement& f) const {
  std::size_t h = 1469598103934665603ull;
  for (int p : f.pads()) h = (h ^ static_cast<std::size_t>(p)) * 1099511628211ull;
  return h;
}

std::string format_hop(const Hop& h) {
  return "frog=" + std::to_string(h.frog) + " from=" + std::to_string(h.from) +
         " to=" + std::to_string(h.to);
}

FrogDynamics::FrogDynamics(const Word& w, const FrogArrangement& start)
    : k_(static_cast<int>(w.size())),
      pads_by_symbol_(w.alphabet().size()),
      pos_(start.pads().begin(), start.pads().end()),
      occ_(k_, -1),
      disp_(k_, 0),
      jumps_(k_, 0),
      agitated_(k_, 0) {
  if (w.empty()) throw Error("empty period");
  if (start.k() != k_) throw Error("arrangement size differs from |W|");
  for (int p = 0; p < k_; ++p) pads_by_symbol_[w[p]].push_back(p);
  for (int m = 0; m < k_; ++m) occ_[pos_[m]] = m;
  heap_.reserve(k_);
}

void FrogDynamics::reset_counters() {
  std::fill(disp_.begin(), disp_.end(), 0);
  std::fill(jumps_.begin(), jumps_.end(), 0);
}

template <class OnHop>
void FrogDynamics::poke_impl(Symbol a, OnHop&& on_hop) {
  if (a >= pads_by_symbol_.size()) return;
  auto cmp = std::greater<int>();  // min-heap on rank: nastiest first
  for (int p : pads_by_symbol_[a]) {
    int m = occ_[p];
    agitated_[m] = 1;
    heap_.push_back(m);
  }
  std::make_heap(heap_.begin(), heap_.end(), cmp);
  while (!heap_.empty()) {
    std::pop_heap(heap_.begin(), heap_.end(), cmp);
    const int m = heap_.back();
    heap_.pop_back();
    agitated_[m] = 0;

    const int from = pos_[m];
    if (occ_[from] == m) occ_[from] = -1;
    int q = from;
    int d = 0;
    bool over_pred = false;
    for (;;) {
      q = q + 1 == k_ ? 0 : q + 1;
      ++d;
      if (q == 0 && m == 0) ++jumps_[0];
      const int o = occ_[q];
      if (o < 0 || o > m) {
        if (o > m && !agitated_[o]) {
          agitated_[o] = 1;
          heap_.push_back(o);
          std::push_heap(heap_.begin(), heap_.end(), cmp);
        }
        break;
      }
      if (o == m - 1) over_pred = true;
    }
    occ_[q] = m;
    pos_[m] = q;
    disp_[m] += d;
    if (over_pred) ++jumps_[m];
    on_hop(Hop{m + 1, from, q, d});
  }
}

void FrogDynamics::poke(Symbol a) {
  poke_impl(a, [](const Hop&) {});
}

void FrogDynamics::poke(Symbol a, const std::function<void(const Hop&)>& on_hop) {
  poke_impl(a, on_hop);
}

void FrogDynamics::apply(std::span<const Symbol> r) {
  for (Symbol a : r) poke(a);
}

FrogArrangement FrogDynamics::arrangement() const { return FrogArrangement(pos_); }

void FrogDynamics::reset(const FrogArrangement& f) {
  if (f.k() != k_) throw Error("arrangement size differs from |W|");
  pos_.assign(f.pads().begin(), f.pads().end());
  for (int m = 0; m < k_; ++m) occ_[pos_[m]] = m;
  reset_counters();
}

TransitionRecord poke(const FrogArrangement& f, Symbol a, const Word& w) {
  FrogDynamics dyn(w, f);
  dyn.poke(a);
  auto d = dyn.displacement();
  auto j = dyn.jumps();
  return {dyn.arrangement(), {d.begin(), d.end()}, {j.begin(), j.end()}};
}

TransitionRecord apply_word(const FrogArrangement& f, const Word& r, const Word& w) {
  FrogDynamics dyn(w, f);
  dyn.apply(r.symbols());
  auto d = dyn.displacement();
  auto j = dyn.jumps();
  return {dyn.arrangement(), {d.begin(), d.end()}, {j.begin(), j.end()}};
}

KHeight ledges_after(const Word& r, const Word& w) {
  const int k = static_cast<int>(w.size());
  FrogDynamics dyn(w, FrogArrangement::empty(k));
  dyn.apply(r.symbols());
  std::vector<std::int64_t> ledges(k);
  for (int i = 0; i < k; ++i) ledges[i] = dyn.displacement()[i] + i;
  return KHeight(k, std::move(ledges));
}

int cyclic_gap(const FrogArrangement& f, int a, int b) {
  const int k = f.k();
  if (a == 0) return f.pad_of(b) + 1;
  int g = ((f.pad_of(b) - f.pad_of(a)) % k + k) % k;
  return g == 0 ? k : g;
}

}  // namespace lcsfrogs
