#include <cstdlib>
#include <stdexcept>

#include <httplib.h>
#include <json.hpp>

#include "biofab/judge/judge.hpp"

namespace biofab::judge {

namespace {

// Splits "http://host:port/prefix" into client base and path prefix.
void split_endpoint(const std::string& endpoint, std::string& base, std::string& prefix) {
    const std::size_t scheme = endpoint.find("://");
    if (scheme == std::string::npos)
        throw std::invalid_argument("judge endpoint must include a scheme: " + endpoint);
    const std::size_t path = endpoint.find('/', scheme + 3);
    if (path == std::string::npos) {
        base = endpoint;
        prefix.clear();
    } else {
        base = endpoint.substr(0, path);
        prefix = endpoint.substr(path);
        while (!prefix.empty() && prefix.back() == '/') prefix.pop_back();
    }
}

class HttpChatTransport final : public ChatTransport {
public:
    std::string complete(const JudgeConfig& config,
                         const std::vector<ChatMessage>& messages) override {
        std::string base, prefix;
        split_endpoint(config.endpoint, base, prefix);

        httplib::Client client(base);
        client.set_connection_timeout(static_cast<time_t>(config.timeout_s), 0);
        client.set_read_timeout(static_cast<time_t>(config.timeout_s), 0);

        httplib::Headers headers;
        if (const char* key = std::getenv("JUDGE_API_KEY"))
            headers.emplace("Authorization", std::string("Bearer ") + key);

        nlohmann::json body;
        body["model"] = config.model;
        body["temperature"] = config.temperature;
        auto& msgs = body["messages"] = nlohmann::json::array();
        for (const auto& m : messages) msgs.push_back({{"role", m.role}, {"content", m.content}});

        const auto res =
            client.Post(prefix + "/chat/completions", headers, body.dump(), "application/json");
        if (!res)
            throw std::runtime_error("judge request failed: " +
                                     httplib::to_string(res.error()));
        if (res->status != 200)
            throw std::runtime_error("judge endpoint returned HTTP " +
                                     std::to_string(res->status));

        const auto j = nlohmann::json::parse(res->body);
        return j.at("choices").at(0).at("message").at("content").get<std::string>();
    }
};

}  // namespace

std::unique_ptr<ChatTransport> make_http_transport() {
    return std::make_unique<HttpChatTransport>();
}

}  // namespace biofab::judge
