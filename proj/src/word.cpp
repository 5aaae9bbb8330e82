#include "fliess/word.hpp"

#include <cctype>

#include "fliess/error.hpp"

namespace fliess {

std::string to_string(Letter a) { return "a" + std::to_string(a.index); }

std::string to_string(const Word& w) {
  if (w.empty()) return "eps";
  std::string out;
  for (Letter a : w) out += to_string(a);
  return out;
}

Word parse_word(std::string_view text) {
  Word w;
  if (text.empty() || text == "eps") return w;
  std::size_t i = 0;
  while (i < text.size()) {
    if (text[i] != 'a') throw ValidationError("malformed word '" + std::string(text) + "': expected 'a'");
    std::size_t j = i + 1;
    while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
    if (j == i + 1) throw ValidationError("malformed word '" + std::string(text) + "': missing letter index");
    if (j - i > 9) throw ValidationError("letter index too large in '" + std::string(text) + "'");
    w.push_back(Letter{static_cast<std::uint32_t>(std::stoul(std::string(text.substr(i + 1, j - i - 1))))});
    i = j;
  }
  return w;
}

std::vector<Word> words_of_length(std::size_t alphabet_size, std::size_t n) {
  std::vector<Word> out;
  if (alphabet_size == 0) {
    if (n == 0) out.emplace_back();
    return out;
  }
  Word w(n, Letter{0});
  while (true) {
    out.push_back(w);
    std::size_t pos = n;
    while (pos > 0) {
      --pos;
      if (w[pos].index + 1 < alphabet_size) {
        ++w[pos].index;
        for (std::size_t k = pos + 1; k < n; ++k) w[k].index = 0;
        break;
      }
      if (pos == 0) return out;
    }
    if (n == 0) return out;
  }
}

std::vector<Word> words_up_to(std::size_t alphabet_size, std::size_t max_length) {
  std::vector<Word> out;
  for (std::size_t n = 0; n <= max_length; ++n) {
    auto level = words_of_length(alphabet_size, n);
    out.insert(out.end(), level.begin(), level.end());
  }
  return out;
}

Word concat(const Word& a, const Word& b) {
  Word out = a;
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

}  // namespace fliess
