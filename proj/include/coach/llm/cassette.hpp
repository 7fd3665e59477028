#pragma once

#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>

#include "coach/llm/provider.hpp"

namespace coach::llm {

/// Map from record_key to the stored provider reply, persisted as
/// human-readable JSON:
///   {"format": "coach-cassette/1",
///    "interactions": {"<key>": {"stage": "...", "reply": {...}}}}
/// Access is internally synchronized.
class Cassette {
public:
    struct Entry {
        std::string stage;
        ProviderReply reply;
    };

    static std::shared_ptr<Cassette> load(const std::filesystem::path& path);

    void save(const std::filesystem::path& path) const;

    std::optional<ProviderReply> find(const std::string& key) const;
    void put(const std::string& key, Entry entry);
    std::size_t size() const;
    /// SHA-256 of the serialized interactions; recorded in eval manifests.
    std::string content_hash() const;

private:
    std::string serialize_locked() const;

    mutable std::mutex mutex_;
    std::map<std::string, Entry> entries_;
};

/// Plays back recorded replies; never calls out. Unknown requests raise
/// CacheMissError.
class ReplayProvider : public Provider {
public:
    explicit ReplayProvider(std::shared_ptr<const Cassette> cassette);

    ProviderReply send(const CompletionRequest& request) override;
    std::string label() const override;

private:
    std::shared_ptr<const Cassette> cassette_;
};

/// Forwards to another provider and records every reply into a cassette.
class RecordingProvider : public Provider {
public:
    RecordingProvider(Provider& inner, std::shared_ptr<Cassette> cassette);

    ProviderReply send(const CompletionRequest& request) override;
    std::string label() const override;

private:
    Provider& inner_;
    std::shared_ptr<Cassette> cassette_;
};

}  // namespace coach::llm
