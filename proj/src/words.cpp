#include "lcsfrogs/words.hpp"

#include <algorithm>

#include "lcsfrogs/error.hpp"

namespace lcsfrogs {

Alphabet::Alphabet(int size) : size_(size) {
  if (size < 1 || size > kMaxSize)
    throw Error("alphabet size must be in 1.." + std::to_string(kMaxSize));
}

namespace {

Alphabet infer_alphabet(const std::vector<Symbol>& s) {
  if (s.empty()) return Alphabet(1);
  return Alphabet(*std::max_element(s.begin(), s.end()) + 1);
}

}  // namespace

Word::Word(std::vector<Symbol> symbols, Alphabet alphabet)
    : symbols_(std::move(symbols)), alphabet_(alphabet) {
  for (Symbol s : symbols_)
    if (!alphabet_.contains(s))
      throw Error("symbol " + std::to_string(s) + " outside alphabet of size " +
                  std::to_string(alphabet_.size()));
}

Word::Word(std::vector<Symbol> symbols)
    : symbols_(std::move(symbols)), alphabet_(infer_alphabet(symbols_)) {}

Word Word::slice(std::size_t from, std::size_t to) const {
  if (from > to || to > symbols_.size()) throw Error("slice out of range");
  return Word(std::vector<Symbol>(symbols_.begin() + from, symbols_.begin() + to),
              alphabet_);
}

Word periodic_expand(const Word& w, std::size_t n) {
  if (w.empty()) throw Error("empty period");
  std::vector<Symbol> out(n);
  const std::size_t k = w.size();
  for (std::size_t i = 0; i < n; ++i) out[i] = w[i % k];
  return Word(std::move(out), w.alphabet());
}

std::size_t primitive_period(const Word& w) {
  if (w.empty()) throw Error("empty period");
  const std::size_t k = w.size();
  for (std::size_t p = 1; p < k; ++p) {
    if (k % p != 0) continue;
    bool ok = true;
    for (std::size_t i = p; i < k && ok; ++i) ok = w[i] == w[i - p];
    if (ok) return p;
  }
  return k;
}

bool is_irreducible(const Word& w) { return primitive_period(w) == w.size(); }

std::vector<char32_t> decode_utf8(std::string_view text) {
  std::vector<char32_t> out;
  std::size_t i = 0;
  while (i < text.size()) {
    auto b = static_cast<unsigned char>(text[i]);
    int len;
    char32_t c;
    if (b < 0x80) {
      len = 1, c = b;
    } else if ((b & 0xE0) == 0xC0) {
      len = 2, c = b & 0x1F;
    } else if ((b & 0xF0) == 0xE0) {
      len = 3, c = b & 0x0F;
    } else if ((b & 0xF8) == 0xF0) {
      len = 4, c = b & 0x07;
    } else {
      throw UsageError("malformed UTF-8 in word");
    }
    if (i + len > text.size()) throw UsageError("malformed UTF-8 in word");
    for (int j = 1; j < len; ++j) {
      auto cb = static_cast<unsigned char>(text[i + j]);
      if ((cb & 0xC0) != 0x80) throw UsageError("malformed UTF-8 in word");
      c = (c << 6) | (cb & 0x3F);
    }
    out.push_back(c);
    i += len;
  }
  return out;
}

std::string encode_utf8(char32_t c) {
  std::string s;
  if (c < 0x80) {
    s += static_cast<char>(c);
  } else if (c < 0x800) {
    s += static_cast<char>(0xC0 | (c >> 6));
    s += static_cast<char>(0x80 | (c & 0x3F));
  } else if (c < 0x10000) {
    s += static_cast<char>(0xE0 | (c >> 12));
    s += static_cast<char>(0x80 | ((c >> 6) & 0x3F));
    s += static_cast<char>(0x80 | (c & 0x3F));
  } else {
    s += static_cast<char>(0xF0 | (c >> 18));
    s += static_cast<char>(0x80 | ((c >> 12) & 0x3F));
    s += static_cast<char>(0x80 | ((c >> 6) & 0x3F));
    s += static_cast<char>(0x80 | (c & 0x3F));
  }
  return s;
}

Word SymbolCodec::parse(std::string_view text, int alphabet_size) {
  std::vector<Symbol> symbols;
  for (char32_t c : decode_utf8(text)) {
    auto it = std::find(chars_.begin(), chars_.end(), c);
    if (it == chars_.end()) {
      if (chars_.size() == Alphabet::kMaxSize)
        throw UsageError("too many distinct symbols");
      chars_.push_back(c);
      it = chars_.end() - 1;
    }
    symbols.push_back(static_cast<Symbol>(it - chars_.begin()));
  }
  const int distinct_now = std::max(1, distinct());
  if (alphabet_size == 0) alphabet_size = distinct_now;
  if (alphabet_size < distinct_now)
    throw UsageError("alphabet size " + std::to_string(alphabet_size) +
                     " is smaller than the " + std::to_string(distinct_now) +
                     " distinct symbols in the input");
  return Word(std::move(symbols), Alphabet(alphabet_size));
}

std::string SymbolCodec::render(const Word& w) const {
  std::string out;
  for (Symbol s : w.symbols()) {
    if (s < chars_.size())
      out += encode_utf8(chars_[s]);
    else if (s < 10)
      out += static_cast<char>('0' + s);
    else
      out += static_cast<char>('A' + (s - 10) % 26);
  }
  return out;
}

Word parse_word(std::string_view text, int alphabet_size) {
  SymbolCodec codec;
  return codec.parse(text, alphabet_size);
}

}  // namespace lcsfrogs
