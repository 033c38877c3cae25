#pragma once

// Tokenization with code-point offsets, sentence segmentation and the
// seeded random stream shared by every stochastic transform.

#include <unicode/uchar.h>

#include <cmath>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "dialsum/error.hpp"

namespace dialsum {

// ---------------------------------------------------------------------------
// UTF-8

namespace utf8 {

// Decodes one scalar value starting at byte `pos`; advances `pos`.
// Throws on malformed input (overlong forms, surrogates, truncation).
inline char32_t decode_one(std::string_view s, size_t& pos) {
  const auto byte = [&](size_t i) { return static_cast<unsigned char>(s[i]); };
  const unsigned char b0 = byte(pos);
  if (b0 < 0x80) {
    ++pos;
    return b0;
  }
  int len = 0;
  char32_t cp = 0;
  char32_t min = 0;
  if ((b0 & 0xE0) == 0xC0) {
    len = 2, cp = b0 & 0x1F, min = 0x80;
  } else if ((b0 & 0xF0) == 0xE0) {
    len = 3, cp = b0 & 0x0F, min = 0x800;
  } else if ((b0 & 0xF8) == 0xF0) {
    len = 4, cp = b0 & 0x07, min = 0x10000;
  } else {
    throw validation_error("invalid UTF-8 lead byte at offset " +
                           std::to_string(pos));
  }
  if (pos + len > s.size()) {
    throw validation_error("truncated UTF-8 sequence at offset " +
                           std::to_string(pos));
  }
  for (int i = 1; i < len; ++i) {
    const unsigned char b = byte(pos + i);
    if ((b & 0xC0) != 0x80) {
      throw validation_error("invalid UTF-8 continuation byte at offset " +
                             std::to_string(pos + i));
    }
    cp = (cp << 6) | (b & 0x3F);
  }
  if (cp < min || cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF)) {
    throw validation_error("invalid UTF-8 scalar value at offset " +
                           std::to_string(pos));
  }
  pos += len;
  return cp;
}

inline std::u32string decode(std::string_view s) {
  std::u32string out;
  out.reserve(s.size());
  for (size_t pos = 0; pos < s.size();) out.push_back(decode_one(s, pos));
  return out;
}

inline void append(std::string& out, char32_t cp) {
  if (cp < 0x80) {
    out.push_back(static_cast<char>(cp));
  } else if (cp < 0x800) {
    out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else if (cp < 0x10000) {
    out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else {
    out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  }
}

inline std::string encode(std::u32string_view s) {
  std::string out;
  out.reserve(s.size());
  for (char32_t cp : s) append(out, cp);
  return out;
}

inline bool valid(std::string_view s) {
  try {
    for (size_t pos = 0; pos < s.size();) decode_one(s, pos);
    return true;
  } catch (const Error&) {
    return false;
  }
}

}  // namespace utf8

// ---------------------------------------------------------------------------
// Character classes

inline bool is_word_char(char32_t cp) {
  if (cp < 0x80) {
    return (cp >= 'a' && cp <= 'z') || (cp >= 'A' && cp <= 'Z') ||
           (cp >= '0' && cp <= '9');
  }
  return u_isalnum(static_cast<UChar32>(cp));
}

inline bool is_apostrophe(char32_t cp) { return cp == U'\'' || cp == U'’'; }

inline bool is_space(char32_t cp) {
  if (cp < 0x80) return cp == ' ' || (cp >= '\t' && cp <= '\r');
  return u_isUWhiteSpace(static_cast<UChar32>(cp));
}

inline bool is_upper(char32_t cp) {
  if (cp < 0x80) return cp >= 'A' && cp <= 'Z';
  return u_isupper(static_cast<UChar32>(cp));
}

inline char32_t to_lower(char32_t cp) {
  if (cp < 0x80) return (cp >= 'A' && cp <= 'Z') ? cp + 32 : cp;
  return static_cast<char32_t>(u_tolower(static_cast<UChar32>(cp)));
}

// Simple per-code-point lowercasing (no context-sensitive mappings).
inline std::string to_lower(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  for (size_t pos = 0; pos < s.size();) utf8::append(out, to_lower(utf8::decode_one(s, pos)));
  return out;
}

inline bool starts_upper(std::string_view s) {
  if (s.empty()) return false;
  size_t pos = 0;
  return is_upper(utf8::decode_one(s, pos));
}

inline std::string trim(std::string_view s) {
  const auto u = utf8::decode(s);
  size_t b = 0, e = u.size();
  while (b < e && is_space(u[b])) ++b;
  while (e > b && is_space(u[e - 1])) --e;
  return utf8::encode(std::u32string_view(u).substr(b, e - b));
}

// ---------------------------------------------------------------------------
// Tokens

enum class TokenKind { Word, Punct };

struct Token {
  std::string text;
  size_t start = 0;  // code-point offset, inclusive
  size_t end = 0;    // code-point offset, exclusive
  TokenKind kind = TokenKind::Word;
  size_t byte_start = 0;
  size_t byte_end = 0;

  bool is_word() const { return kind == TokenKind::Word; }
  friend bool operator==(const Token&, const Token&) = default;
};

// Word tokens are maximal runs of letters/digits; an apostrophe (' or U+2019)
// joins the run when a letter/digit sits on both sides. Any other
// non-whitespace code point is a single Punct token.
inline std::vector<Token> tokenize(std::string_view text) {
  std::vector<Token> tokens;
  std::vector<char32_t> cps;
  std::vector<size_t> byte_at;  // byte offset of each code point, plus end
  cps.reserve(text.size());
  byte_at.reserve(text.size() + 1);
  for (size_t pos = 0; pos < text.size();) {
    byte_at.push_back(pos);
    cps.push_back(utf8::decode_one(text, pos));
  }
  byte_at.push_back(text.size());

  const size_t n = cps.size();
  auto emit = [&](size_t b, size_t e, TokenKind kind) {
    tokens.push_back(Token{std::string(text.substr(byte_at[b], byte_at[e] - byte_at[b])),
                           b, e, kind, byte_at[b], byte_at[e]});
  };
  for (size_t i = 0; i < n;) {
    if (is_space(cps[i])) {
      ++i;
      continue;
    }
    if (!is_word_char(cps[i])) {
      emit(i, i + 1, TokenKind::Punct);
      ++i;
      continue;
    }
    size_t j = i + 1;
    while (j < n) {
      if (is_word_char(cps[j])) {
        ++j;
      } else if (is_apostrophe(cps[j]) && j + 1 < n && is_word_char(cps[j + 1])) {
        j += 2;
      } else {
        break;
      }
    }
    emit(i, j, TokenKind::Word);
    i = j;
  }
  return tokens;
}

// Half-open token index range.
struct TokenRange {
  size_t begin = 0;
  size_t end = 0;

  size_t size() const { return end - begin; }
  bool empty() const { return begin == end; }
  friend bool operator==(const TokenRange&, const TokenRange&) = default;
};

inline bool is_sentence_final(const Token& t) {
  return t.kind == TokenKind::Punct && (t.text == "." || t.text == "!" || t.text == "?");
}

inline std::vector<TokenRange> split_sentences(const std::vector<Token>& tokens) {
  std::vector<TokenRange> spans;
  size_t begin = 0;
  for (size_t i = 0; i < tokens.size(); ++i) {
    if (is_sentence_final(tokens[i])) {
      spans.push_back({begin, i + 1});
      begin = i + 1;
    }
  }
  if (begin < tokens.size()) spans.push_back({begin, tokens.size()});
  return spans;
}

// ---------------------------------------------------------------------------
// Random stream

inline uint64_t fnv1a64(std::string_view bytes) {
  uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

inline uint64_t splitmix64_mix(uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// SplitMix64 stream. Bit-exact across platforms; every draw helper is
// defined in terms of next_u64 only.
class RngStream {
 public:
  explicit RngStream(uint64_t state) : state_(state) {}

  uint64_t state() const { return state_; }

  uint64_t next_u64() {
    state_ += 0x9e3779b97f4a7c15ULL;
    return splitmix64_mix(state_);
  }

  double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  bool bernoulli(double p) { return uniform01() < p; }

  // Knuth's multiplication method.
  uint64_t poisson(double lambda) {
    const double limit = std::exp(-lambda);
    uint64_t k = 0;
    double product = uniform01();
    while (product >= limit) {
      ++k;
      product *= uniform01();
    }
    return k;
  }

  // Modulo reduction; bias is at most n / 2^64.
  uint64_t choice(uint64_t n) {
    if (n == 0) throw validation_error("choice from an empty candidate set");
    return next_u64() % n;
  }

 private:
  uint64_t state_;
};

inline RngStream derive_rng(uint64_t global_seed, std::string_view doc_id) {
  return RngStream(splitmix64_mix(global_seed ^ fnv1a64(doc_id)));
}

}  // namespace dialsum
