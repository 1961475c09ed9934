#ifndef ARGSTRUCT_ANNOTATOR_HPP
#define ARGSTRUCT_ANNOTATOR_HPP

#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <unordered_map>

#include "argstruct/corpus.hpp"

namespace argstruct {

// entity key -> occurrence count for one node. Keys are lowercased.
using EntityAnnotation = std::map<std::string, int>;

class EntityAnnotator {
public:
    virtual ~EntityAnnotator() = default;
    virtual EntityAnnotation annotate(const std::string& text) = 0;
    virtual std::string name() const = 0;
};

// Fallback annotator: maximal runs of capitalized tokens in the raw
// (pre-lowercase) text become entity keys.
class OfflineAnnotator : public EntityAnnotator {
public:
    EntityAnnotation annotate(const std::string& text) override;
    std::string name() const override { return "offline"; }
};

struct RemoteAnnotatorConfig {
    std::string endpoint;          // e.g. "https://tagme.d4science.org/tagme/tag"
    std::string api_key;           // usually from ARGSTRUCT_TAGME_KEY
    bool fallback_offline = true;  // on transport failure, warn and fall back
    int timeout_seconds = 10;
};

// HTTP GET client for a TAGME-style service. The response is expected to
// be JSON with an "annotations" array of objects carrying "title" fields.
class RemoteAnnotator : public EntityAnnotator {
public:
    explicit RemoteAnnotator(RemoteAnnotatorConfig cfg);
    EntityAnnotation annotate(const std::string& text) override;
    std::string name() const override { return "remote"; }

    // Exposed for tests: turn a raw response body into an annotation.
    static EntityAnnotation parse_response(const std::string& body);

private:
    RemoteAnnotatorConfig cfg_;
    OfflineAnnotator fallback_;
    std::mutex mutex_;  // requests are serialized
};

// Thread-safe memoization by node text, with optional JSON persistence so
// experiment reruns never re-query a remote service.
class CachingAnnotator : public EntityAnnotator {
public:
    explicit CachingAnnotator(std::shared_ptr<EntityAnnotator> inner,
                              std::string cache_path = "");
    EntityAnnotation annotate(const std::string& text) override;
    std::string name() const override;

    void save_cache() const;
    size_t cache_size() const;

private:
    std::shared_ptr<EntityAnnotator> inner_;
    std::string cache_path_;
    mutable std::mutex mutex_;
    std::unordered_map<std::string, EntityAnnotation> cache_;
};

EntityAnnotation annotate_entities(const PropositionNode& node,
                                   EntityAnnotator& annotator);

// annotator_mode: "offline" | "remote" | "remote-with-fallback".
std::shared_ptr<EntityAnnotator> make_annotator(const std::string& mode,
                                                const std::string& endpoint,
                                                const std::string& cache_path);

}  // namespace argstruct

#endif
