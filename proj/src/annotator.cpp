#include "argstruct/annotator.hpp"

#include <cctype>
#include <cstdlib>
#include <fstream>
#include <iostream>

#include <httplib.h>
#include <json.hpp>

#include "argstruct/tokenize.hpp"

namespace argstruct {

using nlohmann::json;

namespace {

bool is_capitalized(const std::string& tok) {
    return !tok.empty() && std::isupper(static_cast<unsigned char>(tok[0])) != 0;
}

std::string lowercased(const std::string& s) {
    std::string out = s;
    for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return out;
}

}  // namespace

EntityAnnotation OfflineAnnotator::annotate(const std::string& text) {
    // Raw whitespace words, keeping note of trailing punctuation: a period
    // or comma after a word ends the current run ("Labor. Labor" is two
    // entities, not one).
    struct Word {
        std::string core;
        bool breaks_after = false;
    };
    std::vector<Word> words;
    size_t i = 0, n = text.size();
    while (i < n) {
        while (i < n && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
        size_t start = i;
        while (i < n && !std::isspace(static_cast<unsigned char>(text[i]))) ++i;
        if (i == start) break;
        std::string raw = text.substr(start, i - start);
        size_t lo = 0, hi = raw.size();
        auto punct = [&](size_t p) {
            unsigned char c = static_cast<unsigned char>(raw[p]);
            return c < 0x80 && std::ispunct(c) != 0;
        };
        while (lo < hi && punct(lo)) ++lo;
        size_t trail = hi;
        while (trail > lo && punct(trail - 1)) --trail;
        if (lo == trail) continue;
        words.push_back({raw.substr(lo, trail - lo), trail != hi});
    }

    EntityAnnotation out;
    size_t w = 0;
    while (w < words.size()) {
        if (!is_capitalized(words[w].core)) {
            ++w;
            continue;
        }
        std::string key;
        while (w < words.size() && is_capitalized(words[w].core)) {
            if (!key.empty()) key += ' ';
            key += lowercased(words[w].core);
            bool stop = words[w].breaks_after;
            ++w;
            if (stop) break;
        }
        out[key] += 1;
    }
    return out;
}

RemoteAnnotator::RemoteAnnotator(RemoteAnnotatorConfig cfg) : cfg_(std::move(cfg)) {
    if (cfg_.api_key.empty()) {
        const char* env = std::getenv("ARGSTRUCT_TAGME_KEY");
        if (env) cfg_.api_key = env;
    }
    if (cfg_.endpoint.empty()) {
        cfg_.endpoint = "https://tagme.d4science.org/tagme/tag";
    }
}

EntityAnnotation RemoteAnnotator::parse_response(const std::string& body) {
    json doc = json::parse(body);
    EntityAnnotation out;
    if (doc.contains("annotations") && doc["annotations"].is_array()) {
        for (const auto& a : doc["annotations"]) {
            if (a.contains("title") && a["title"].is_string()) {
                out[lowercased(a["title"].get<std::string>())] += 1;
            }
        }
    }
    return out;
}

EntityAnnotation RemoteAnnotator::annotate(const std::string& text) {
    std::lock_guard<std::mutex> lock(mutex_);

    // split endpoint into host part and path
    std::string url = cfg_.endpoint;
    std::string scheme_host = url, path = "/";
    auto scheme_end = url.find("://");
    size_t path_start = url.find('/', scheme_end == std::string::npos ? 0 : scheme_end + 3);
    if (path_start != std::string::npos) {
        scheme_host = url.substr(0, path_start);
        path = url.substr(path_start);
    }

    try {
        httplib::Client client(scheme_host);
        client.set_connection_timeout(cfg_.timeout_seconds);
        client.set_read_timeout(cfg_.timeout_seconds);
        httplib::Params params{{"text", text}, {"gcube-token", cfg_.api_key}};
        auto res = client.Get(path, params, httplib::Headers{});
        if (!res || res->status != 200) {
            throw Error("entity service returned " +
                        (res ? std::to_string(res->status) : std::string("no response")));
        }
        return parse_response(res->body);
    } catch (const std::exception& e) {
        if (!cfg_.fallback_offline) {
            throw Error(std::string("remote entity annotation failed: ") + e.what());
        }
        std::cerr << "warning: remote entity annotation failed (" << e.what()
                  << "); using offline fallback\n";
        return fallback_.annotate(text);
    }
}

CachingAnnotator::CachingAnnotator(std::shared_ptr<EntityAnnotator> inner,
                                   std::string cache_path)
    : inner_(std::move(inner)), cache_path_(std::move(cache_path)) {
    if (cache_path_.empty()) return;
    std::ifstream in(cache_path_);
    if (!in) return;  // no cache yet
    json doc;
    in >> doc;
    for (auto it = doc.begin(); it != doc.end(); ++it) {
        EntityAnnotation ann;
        for (auto e = it.value().begin(); e != it.value().end(); ++e) {
            ann[e.key()] = e.value().get<int>();
        }
        cache_[it.key()] = std::move(ann);
    }
}

EntityAnnotation CachingAnnotator::annotate(const std::string& text) {
    {
        std::lock_guard<std::mutex> lock(mutex_);
        auto it = cache_.find(text);
        if (it != cache_.end()) return it->second;
    }
    EntityAnnotation ann = inner_->annotate(text);
    std::lock_guard<std::mutex> lock(mutex_);
    cache_.emplace(text, ann);
    return ann;
}

std::string CachingAnnotator::name() const { return inner_->name(); }

size_t CachingAnnotator::cache_size() const {
    std::lock_guard<std::mutex> lock(mutex_);
    return cache_.size();
}

void CachingAnnotator::save_cache() const {
    if (cache_path_.empty()) return;
    std::lock_guard<std::mutex> lock(mutex_);
    json doc = json::object();
    for (const auto& [text, ann] : cache_) {
        json entry = json::object();
        for (const auto& [key, count] : ann) entry[key] = count;
        doc[text] = std::move(entry);
    }
    std::ofstream out(cache_path_);
    if (!out) throw Error("cannot write entity cache: " + cache_path_);
    out << doc.dump(2) << "\n";
}

EntityAnnotation annotate_entities(const PropositionNode& node,
                                   EntityAnnotator& annotator) {
    return annotator.annotate(node.text);
}

std::shared_ptr<EntityAnnotator> make_annotator(const std::string& mode,
                                                const std::string& endpoint,
                                                const std::string& cache_path) {
    std::shared_ptr<EntityAnnotator> base;
    if (mode == "offline") {
        base = std::make_shared<OfflineAnnotator>();
    } else if (mode == "remote" || mode == "remote-with-fallback") {
        RemoteAnnotatorConfig cfg;
        cfg.endpoint = endpoint;
        cfg.fallback_offline = (mode == "remote-with-fallback");
        base = std::make_shared<RemoteAnnotator>(std::move(cfg));
    } else {
        throw Error("unknown annotator mode: '" + mode + "'");
    }
    return std::make_shared<CachingAnnotator>(std::move(base), cache_path);
}

}  // namespace argstruct
