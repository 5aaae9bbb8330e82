#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace fliess {

/// Alphabet letter. Index 0 is the drift letter a0 (input u0 = 1);
/// index j >= 1 stands for input u_j.
struct Letter {
  std::uint32_t index = 0;

  friend auto operator<=>(const Letter&, const Letter&) = default;
};

using Word = std::vector<Letter>;

/// Letters print as `a<index>`; words concatenate them, the empty word is `eps`.
std::string to_string(Letter a);
std::string to_string(const Word& w);

/// Parses `a0a1a2` (or `eps` / empty string for the empty word).
/// Throws ValidationError on malformed text.
Word parse_word(std::string_view text);

/// Shortlex order: shorter words first, then lexicographic by letter index.
struct ShortLex {
  bool operator()(const Word& a, const Word& b) const {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  }
};

/// All words over {a0..a_(alphabet_size-1)} of length exactly n, in lexicographic order.
std::vector<Word> words_of_length(std::size_t alphabet_size, std::size_t n);

/// All words of length <= max_length in shortlex order.
std::vector<Word> words_up_to(std::size_t alphabet_size, std::size_t max_length);

Word concat(const Word& a, const Word& b);

}  // namespace fliess
