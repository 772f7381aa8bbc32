#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace lcsfrogs {

using Symbol = std::uint8_t;

class Alphabet {
 public:
  static constexpr int kMaxSize = 256;

  explicit Alphabet(int size);
  int size() const { return size_; }
  bool contains(Symbol s) const { return s < size_; }
  friend bool operator==(Alphabet, Alphabet) = default;

 private:
  int size_;
};

class Word {
 public:
  Word(std::vector<Symbol> symbols, Alphabet alphabet);
  // Alphabet inferred as max symbol + 1.
  explicit Word(std::vector<Symbol> symbols);

  std::size_t size() const { return symbols_.size(); }
  bool empty() const { return symbols_.empty(); }
  Symbol operator[](std::size_t i) const { return symbols_[i]; }
  std::span<const Symbol> symbols() const { return symbols_; }
  Alphabet alphabet() const { return alphabet_; }

  Word with_alphabet(Alphabet a) const { return Word(symbols_, a); }
  // Half-open slice [from, to).
  Word slice(std::size_t from, std::size_t to) const;

  friend bool operator==(const Word&, const Word&) = default;

 private:
  std::vector<Symbol> symbols_;
  Alphabet alphabet_;
};

Word periodic_expand(const Word& w, std::size_t n);

// Length of the shortest u with w = u^(|w|) and |u| dividing |w|.
std::size_t primitive_period(const Word& w);

bool is_irreducible(const Word& w);

// Text <-> Word. Each UTF-8 code point is one symbol; codes are handed out
// in first-appearance order, so "ba" and "ab" both start with code 0.
class SymbolCodec {
 public:
  SymbolCodec() = default;

  // alphabet_size = 0 means "number of distinct characters".
  Word parse(std::string_view text, int alphabet_size = 0);
  // Characters for codes this codec has not seen are rendered as the code's
  // decimal digit when < 10, otherwise as a letter.
  std::string render(const Word& w) const;

  int distinct() const { return static_cast<int>(chars_.size()); }

 private:
  std::vector<char32_t> chars_;
};

// One-shot helper.
Word parse_word(std::string_view text, int alphabet_size = 0);

std::vector<char32_t> decode_utf8(std::string_view text);
std::string encode_utf8(char32_t c);

}  // namespace lcsfrogs
