#pragma once

#include "morphnmt/text.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <string>
#include <unordered_map>
#include <vector>

namespace morphnmt {

inline const std::vector<std::string>& special_tokens() {
  static const std::vector<std::string> kSpecials = {"<pad>", "<go>", "<eos>",
                                                     "<unk>"};
  return kSpecials;
}

// Bidirectional token<->id map. Ids 0-3 are reserved for the special
// tokens; real tokens start at id 4, ordered by descending frequency
// with lexicographic tie-break.
class Vocabulary {
 public:
  Vocabulary() {
    for (const auto& s : special_tokens()) push(s, 0);
  }

  int id_of(const std::string& token) const {
    auto it = ids_.find(token);
    return it == ids_.end() ? kUnk : it->second;
  }

  bool contains(const std::string& token) const { return ids_.count(token); }

  const std::string& token_of(int id) const {
    require(id >= 0 && id < static_cast<int>(tokens_.size()),
            "token id out of range: " + std::to_string(id));
    return tokens_[static_cast<std::size_t>(id)];
  }

  long freq(const std::string& token) const {
    auto it = ids_.find(token);
    return it == ids_.end() ? 0 : freqs_[static_cast<std::size_t>(it->second)];
  }

  long freq_of_id(int id) const { return freqs_[static_cast<std::size_t>(id)]; }

  std::size_t size() const { return tokens_.size(); }

  void push(const std::string& token, long freq) {
    require(!ids_.count(token), "duplicate token: " + token);
    ids_.emplace(token, static_cast<int>(tokens_.size()));
    tokens_.push_back(token);
    freqs_.push_back(freq);
  }

 private:
  std::vector<std::string> tokens_;
  std::vector<long> freqs_;
  std::unordered_map<std::string, int> ids_;
};

// Keeps the cap-4 most frequent tokens, descending frequency,
// lexicographic tie-break.
inline Vocabulary build_vocabulary(const std::vector<Sentence>& sentences,
                                   std::size_t cap) {
  require(cap >= 4, "vocabulary cap must be at least 4");
  require(!sentences.empty(), "cannot build a vocabulary from no sentences");

  std::map<std::string, long> counts;
  for (const auto& s : sentences)
    for (const auto& tok : s.tokens) ++counts[tok];
  require(!counts.empty(), "cannot build a vocabulary from empty sentences");

  std::vector<std::pair<std::string, long>> ranked(counts.begin(),
                                                   counts.end());
  std::stable_sort(ranked.begin(), ranked.end(),
                   [](const auto& a, const auto& b) {
                     if (a.second != b.second) return a.second > b.second;
                     return a.first < b.first;
                   });

  Vocabulary v;
  const std::size_t keep = std::min(ranked.size(), cap - 4);
  for (std::size_t i = 0; i < keep; ++i)
    v.push(ranked[i].first, ranked[i].second);
  return v;
}

inline std::vector<int> encode_sentence(const Vocabulary& vocab,
                                        const Sentence& s, bool append_eos) {
  std::vector<int> ids;
  ids.reserve(s.tokens.size() + 1);
  for (const auto& tok : s.tokens) ids.push_back(vocab.id_of(tok));
  if (append_eos) ids.push_back(kEos);
  return ids;
}

// Inverse of encode_sentence; PAD/GO/EOS are dropped, UNK keeps its
// surface form.
inline Sentence decode_sentence(const Vocabulary& vocab,
                                const std::vector<int>& ids) {
  Sentence s;
  for (int id : ids) {
    if (id == kPad || id == kGo || id == kEos) continue;
    s.tokens.push_back(vocab.token_of(id));
  }
  return s;
}

// Vocabulary file: one token per line, 0-based line number = id, with
// the four reserved literals on the first four lines.
inline void save_vocabulary(const Vocabulary& v, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  require(out.good(), "cannot open vocabulary file for writing: " + path);
  for (std::size_t id = 0; id < v.size(); ++id) {
    out << v.token_of(static_cast<int>(id));
    if (id >= 4) out << '\t' << v.freq_of_id(static_cast<int>(id));
    out << '\n';
  }
}

inline Vocabulary load_vocabulary(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  require(in.good(), "cannot open vocabulary file: " + path);
  Vocabulary v;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::string token = line;
    long freq = 1;
    if (auto tab = line.find('\t'); tab != std::string::npos) {
      token = line.substr(0, tab);
      freq = std::stol(line.substr(tab + 1));
    }
    if (lineno < 4) {
      require(token == special_tokens()[lineno],
              "vocabulary file " + path + " line " + std::to_string(lineno) +
                  ": expected reserved token " + special_tokens()[lineno]);
    } else {
      v.push(token, freq);
    }
    ++lineno;
  }
  require(lineno >= 4, "vocabulary file " + path + " is truncated");
  return v;
}

// FNV-1a over the token list; checkpoints use it to verify that a model
// is paired with the vocabulary it was trained on.
inline std::uint64_t vocabulary_hash(const Vocabulary& v) {
  std::uint64_t h = 1469598103934665603ULL;
  auto mix = [&h](unsigned char b) {
    h ^= b;
    h *= 1099511628211ULL;
  };
  for (std::size_t id = 0; id < v.size(); ++id) {
    for (unsigned char b : v.token_of(static_cast<int>(id))) mix(b);
    mix('\n');
  }
  return h;
}

}  // namespace morphnmt
