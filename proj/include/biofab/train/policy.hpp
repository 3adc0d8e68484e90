#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "biofab/qa/item.hpp"

namespace biofab::train {

/// Token table for the toy policy: tag fragments, option letters, a filler
/// thought token and an end token (empty string, dropped when decoding).
struct Vocabulary {
    std::vector<std::string> tokens;
    std::size_t eos = 0;

    std::size_t size() const { return tokens.size(); }
    static Vocabulary toy_default();
};

/// Tabular autoregressive categorical policy. The context state is a bounded
/// summary of (prompt, position, previous token); the prompt enters through
/// its cue class, the index of the first registered cue marker found in the
/// question text. Rows of `logits` are softmax-normalized on use.
class ToyPolicy {
public:
    ToyPolicy(Vocabulary vocab, std::size_t n_cues, std::size_t max_len,
              std::vector<std::string> cue_markers);

    /// Start from a format-aware initialization: the tag scaffold gets `bias`
    /// logits along the ideal token sequence while the answer-slot letters
    /// stay uniform, mimicking an instruction-tuned model that already emits
    /// the tags but guesses the letter.
    static ToyPolicy scaffold_initialized(Vocabulary vocab, std::size_t n_cues,
                                          std::size_t max_len,
                                          std::vector<std::string> cue_markers,
                                          double bias = 9.0);

    const Vocabulary& vocab() const { return vocab_; }
    std::size_t n_cues() const { return n_cues_; }
    std::size_t max_len() const { return max_len_; }

    std::size_t n_states() const { return n_cues_ * max_len_ * (vocab_.size() + 1); }
    std::size_t n_params() const { return n_states() * vocab_.size(); }

    /// prev == -1 encodes "start of sequence".
    std::size_t state_index(std::size_t cue, std::size_t position, std::int64_t prev) const;

    std::span<const double> row(std::size_t state) const;
    std::span<double> row(std::size_t state);

    std::vector<double>& parameters() { return logits_; }
    const std::vector<double>& parameters() const { return logits_; }

    std::vector<double> log_probs(std::size_t state) const;

    /// Cue class of an item: index of the first marker contained in the
    /// question. Throws when no marker matches.
    std::size_t cue_of(const qa::QaItem& item) const;

    std::string decode(std::span<const std::size_t> tokens) const;

    /// Flat binary tensor with a text header (shape, vocabulary, seed tag).
    void save(const std::string& path, std::uint64_t seed) const;
    static ToyPolicy load(const std::string& path);

private:
    Vocabulary vocab_;
    std::size_t n_cues_;
    std::size_t max_len_;
    std::vector<std::string> cue_markers_;
    std::vector<double> logits_;  // [n_states x vocab]
};

}  // namespace biofab::train
