#include "coach/llm/cassette.hpp"

#include <fstream>

#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include "coach/llm/errors.hpp"
#include "coach/llm/record_key.hpp"
#include "coach/util/sha256.hpp"

namespace coach::llm {

namespace {
constexpr std::string_view kFormat = "coach-cassette/1";
}

std::shared_ptr<Cassette> Cassette::load(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error(fmt::format("cannot open cassette {}", path.string()));
    const auto doc = nlohmann::json::parse(in);
    if (doc.value("format", "") != kFormat) {
        throw std::runtime_error(fmt::format("{} is not a {} file", path.string(), kFormat));
    }
    auto cassette = std::make_shared<Cassette>();
    for (const auto& [key, value] : doc.at("interactions").items()) {
        cassette->entries_[key] = Entry{value.value("stage", ""), value.at("reply").get<ProviderReply>()};
    }
    return cassette;
}

std::string Cassette::serialize_locked() const {
    nlohmann::json interactions = nlohmann::json::object();
    for (const auto& [key, entry] : entries_) {
        interactions[key] = {{"stage", entry.stage}, {"reply", entry.reply}};
    }
    const nlohmann::json doc{{"format", kFormat}, {"interactions", interactions}};
    return doc.dump(2) + "\n";
}

void Cassette::save(const std::filesystem::path& path) const {
    std::string text;
    {
        std::lock_guard lock(mutex_);
        text = serialize_locked();
    }
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    out << text;
    if (!out) throw std::runtime_error(fmt::format("cannot write cassette {}", path.string()));
}

std::optional<ProviderReply> Cassette::find(const std::string& key) const {
    std::lock_guard lock(mutex_);
    if (auto it = entries_.find(key); it != entries_.end()) return it->second.reply;
    return std::nullopt;
}

void Cassette::put(const std::string& key, Entry entry) {
    std::lock_guard lock(mutex_);
    entries_[key] = std::move(entry);
}

std::size_t Cassette::size() const {
    std::lock_guard lock(mutex_);
    return entries_.size();
}

std::string Cassette::content_hash() const {
    std::lock_guard lock(mutex_);
    return util::sha256_hex(serialize_locked());
}

ReplayProvider::ReplayProvider(std::shared_ptr<const Cassette> cassette) : cassette_(std::move(cassette)) {}

ProviderReply ReplayProvider::send(const CompletionRequest& request) {
    auto key = record_key(request);
    if (auto reply = cassette_->find(key)) return *reply;
    throw CacheMissError(std::move(key));
}

std::string ReplayProvider::label() const { return "replay:" + cassette_->content_hash(); }

RecordingProvider::RecordingProvider(Provider& inner, std::shared_ptr<Cassette> cassette)
    : inner_(inner), cassette_(std::move(cassette)) {}

ProviderReply RecordingProvider::send(const CompletionRequest& request) {
    auto reply = inner_.send(request);
    cassette_->put(record_key(request), {request.stage, reply});
    return reply;
}

std::string RecordingProvider::label() const { return "recording:" + inner_.label(); }

}  // namespace coach::llm
