#include "biofab/qa/shuffle.hpp"

#include <stdexcept>

#include "biofab/rng.hpp"

namespace biofab::qa {

QaItem shuffle_options(QaItem item, std::uint64_t seed) {
    if (item.options.size() < 2)
        throw std::invalid_argument("shuffle_options: item " + item.id + " needs two options");

    const std::string keyed_text = item.keyed_option().text;

    std::vector<std::string> texts;
    texts.reserve(item.options.size());
    for (const auto& o : item.options) texts.push_back(o.text);

    Rng rng(derive_seed(seed, "shuffle:" + item.id));
    rng.shuffle(texts);

    for (std::size_t i = 0; i < item.options.size(); ++i) {
        item.options[i].text = texts[i];
        if (texts[i] == keyed_text) item.answer = item.options[i].label;
    }
    return item;
}

}  // namespace biofab::qa
