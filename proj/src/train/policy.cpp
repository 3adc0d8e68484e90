#include "biofab/train/policy.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "biofab/io/table.hpp"
#include "biofab/text.hpp"

namespace biofab::train {

Vocabulary Vocabulary::toy_default() {
    Vocabulary v;
    v.tokens = {"<think>", "</think>", "<answer>", "</answer>", "A", "B", "ok", "\n", ""};
    v.eos = v.tokens.size() - 1;
    return v;
}

ToyPolicy::ToyPolicy(Vocabulary vocab, std::size_t n_cues, std::size_t max_len,
                     std::vector<std::string> cue_markers)
    : vocab_(std::move(vocab)),
      n_cues_(n_cues),
      max_len_(max_len),
      cue_markers_(std::move(cue_markers)) {
    if (n_cues_ == 0 || max_len_ == 0 || vocab_.size() == 0)
        throw std::invalid_argument("ToyPolicy: degenerate shape");
    if (cue_markers_.size() != n_cues_)
        throw std::invalid_argument("ToyPolicy: one cue marker per cue class required");
    logits_.assign(n_states() * vocab_.size(), 0.0);
}

ToyPolicy ToyPolicy::scaffold_initialized(Vocabulary vocab, std::size_t n_cues,
                                          std::size_t max_len,
                                          std::vector<std::string> cue_markers, double bias) {
    ToyPolicy policy(vocab, n_cues, max_len, std::move(cue_markers));
    const auto& v = policy.vocab_;

    auto tok = [&](const char* s) {
        for (std::size_t i = 0; i < v.tokens.size(); ++i)
            if (v.tokens[i] == s) return i;
        throw std::logic_error("scaffold token missing from vocabulary");
    };
    // <think> ok </think> \n <answer> LETTER </answer> eos
    const std::size_t letter_a = tok("A"), letter_b = tok("B");
    const std::vector<std::size_t> scaffold = {tok("<think>"), tok("ok"),  tok("</think>"),
                                               tok("\n"),      tok("<answer>"), letter_a,
                                               tok("</answer>"), v.eos};

    for (std::size_t cue = 0; cue < n_cues; ++cue) {
        std::int64_t prev = -1;
        for (std::size_t pos = 0; pos < std::min(max_len, scaffold.size()); ++pos) {
            auto row = policy.row(policy.state_index(cue, pos, prev));
            if (scaffold[pos] == letter_a) {
                row[letter_a] = bias;  // answer slot: letters stay uniform
                row[letter_b] = bias;
                // both letters must lead into the same continuation
                if (pos + 1 < scaffold.size() && pos + 1 < max_len) {
                    auto after_b = policy.row(policy.state_index(
                        cue, pos + 1, static_cast<std::int64_t>(letter_b)));
                    after_b[scaffold[pos + 1]] = bias;
                }
            } else {
                row[scaffold[pos]] = bias;
            }
            prev = static_cast<std::int64_t>(scaffold[pos]);
        }
    }
    return policy;
}

std::size_t ToyPolicy::state_index(std::size_t cue, std::size_t position,
                                   std::int64_t prev) const {
    if (cue >= n_cues_ || position >= max_len_)
        throw std::out_of_range("ToyPolicy::state_index");
    const std::size_t prev_idx = static_cast<std::size_t>(prev + 1);  // -1 -> 0
    if (prev_idx > vocab_.size()) throw std::out_of_range("ToyPolicy::state_index: prev");
    return (cue * max_len_ + position) * (vocab_.size() + 1) + prev_idx;
}

std::span<const double> ToyPolicy::row(std::size_t state) const {
    return {logits_.data() + state * vocab_.size(), vocab_.size()};
}

std::span<double> ToyPolicy::row(std::size_t state) {
    return {logits_.data() + state * vocab_.size(), vocab_.size()};
}

std::vector<double> ToyPolicy::log_probs(std::size_t state) const {
    const auto r = row(state);
    double max_logit = r[0];
    for (double v : r) max_logit = std::max(max_logit, v);
    double sum = 0;
    for (double v : r) sum += std::exp(v - max_logit);
    const double log_z = max_logit + std::log(sum);
    std::vector<double> out(r.size());
    for (std::size_t i = 0; i < r.size(); ++i) out[i] = r[i] - log_z;
    return out;
}

std::size_t ToyPolicy::cue_of(const qa::QaItem& item) const {
    for (std::size_t i = 0; i < cue_markers_.size(); ++i)
        if (contains(item.question, cue_markers_[i])) return i;
    throw std::invalid_argument("ToyPolicy: no cue marker found in item " + item.id);
}

std::string ToyPolicy::decode(std::span<const std::size_t> tokens) const {
    std::string out;
    for (std::size_t t : tokens) {
        if (t == vocab_.eos) break;
        out += vocab_.tokens[t];
    }
    return out;
}

void ToyPolicy::save(const std::string& path, std::uint64_t seed) const {
    std::ostringstream header;
    header << "toy-policy v1\n";
    header << "cues " << n_cues_ << " max_len " << max_len_ << " vocab " << vocab_.size()
           << " eos " << vocab_.eos << " seed " << seed << "\n";
    for (std::size_t i = 0; i < vocab_.tokens.size(); ++i) {
        std::string escaped;
        for (char c : vocab_.tokens[i]) escaped += c == '\n' ? std::string("\\n") : std::string(1, c);
        header << "token " << i << " " << escaped << "\n";
    }
    for (const auto& m : cue_markers_) header << "cue_marker " << m << "\n";
    header << "tensor " << logits_.size() << "\n";

    std::string blob = header.str();
    blob.append(reinterpret_cast<const char*>(logits_.data()),
                logits_.size() * sizeof(double));
    io::atomic_write_text(path, blob);
}

ToyPolicy ToyPolicy::load(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open policy checkpoint " + path);
    std::string line;
    if (!std::getline(in, line) || line != "toy-policy v1")
        throw std::runtime_error("bad policy header in " + path);
    std::getline(in, line);
    std::istringstream shape(line);
    std::string key;
    std::size_t n_cues, max_len, vocab_size, eos;
    std::uint64_t seed;
    shape >> key >> n_cues >> key >> max_len >> key >> vocab_size >> key >> eos >> key >> seed;

    Vocabulary vocab;
    vocab.tokens.resize(vocab_size);
    vocab.eos = eos;
    std::vector<std::string> markers;
    std::size_t tensor_len = 0;
    while (std::getline(in, line)) {
        if (line.rfind("token ", 0) == 0) {
            std::istringstream ls(line.substr(6));
            std::size_t idx;
            ls >> idx;
            std::string rest;
            std::getline(ls, rest);
            if (!rest.empty() && rest.front() == ' ') rest.erase(0, 1);
            std::string unescaped;
            for (std::size_t i = 0; i < rest.size(); ++i) {
                if (rest[i] == '\\' && i + 1 < rest.size() && rest[i + 1] == 'n') {
                    unescaped += '\n';
                    ++i;
                } else {
                    unescaped += rest[i];
                }
            }
            vocab.tokens.at(idx) = unescaped;
        } else if (line.rfind("cue_marker ", 0) == 0) {
            markers.push_back(line.substr(11));
        } else if (line.rfind("tensor ", 0) == 0) {
            tensor_len = std::stoul(line.substr(7));
            break;
        }
    }
    ToyPolicy policy(vocab, n_cues, max_len, markers);
    if (tensor_len != policy.logits_.size())
        throw std::runtime_error("policy tensor size mismatch in " + path);
    in.read(reinterpret_cast<char*>(policy.logits_.data()),
            static_cast<std::streamsize>(tensor_len * sizeof(double)));
    if (!in) throw std::runtime_error("truncated policy tensor in " + path);
    return policy;
}

}  // namespace biofab::train
