#include <cstring>
#include <fstream>

#include "argstruct/classifiers.hpp"

namespace argstruct {

// Binary container: magic "ARGM", u32 format version, u8 kind tag, then
// length-prefixed sections. Doubles are stored as raw IEEE-754 bytes so a
// round-trip reproduces scores bit-identically.

namespace {

constexpr char kMagic[4] = {'A', 'R', 'G', 'M'};
constexpr uint32_t kVersion = 1;
constexpr uint8_t kKindLinear = 1;
constexpr uint8_t kKindMlp = 2;

void put_u32(std::ostream& out, uint32_t v) {
    unsigned char b[4];
    for (int i = 0; i < 4; ++i) b[i] = static_cast<unsigned char>(v >> (8 * i));
    out.write(reinterpret_cast<const char*>(b), 4);
}

void put_u64(std::ostream& out, uint64_t v) {
    unsigned char b[8];
    for (int i = 0; i < 8; ++i) b[i] = static_cast<unsigned char>(v >> (8 * i));
    out.write(reinterpret_cast<const char*>(b), 8);
}

void put_string(std::ostream& out, const std::string& s) {
    put_u64(out, s.size());
    out.write(s.data(), static_cast<std::streamsize>(s.size()));
}

void put_doubles(std::ostream& out, const std::vector<double>& v) {
    put_u64(out, v.size());
    for (double d : v) {
        uint64_t bits;
        std::memcpy(&bits, &d, sizeof bits);
        put_u64(out, bits);
    }
}

struct Reader {
    std::istream& in;
    std::string origin;

    void fail(const std::string& why) const {
        throw Error("corrupt model file (" + why + "): " + origin);
    }
    uint32_t get_u32() {
        unsigned char b[4];
        if (!in.read(reinterpret_cast<char*>(b), 4)) fail("truncated");
        uint32_t v = 0;
        for (int i = 0; i < 4; ++i) v |= static_cast<uint32_t>(b[i]) << (8 * i);
        return v;
    }
    uint64_t get_u64() {
        unsigned char b[8];
        if (!in.read(reinterpret_cast<char*>(b), 8)) fail("truncated");
        uint64_t v = 0;
        for (int i = 0; i < 8; ++i) v |= static_cast<uint64_t>(b[i]) << (8 * i);
        return v;
    }
    std::string get_string() {
        uint64_t n = get_u64();
        if (n > (1ULL << 32)) fail("implausible string length");
        std::string s(n, '\0');
        if (n && !in.read(s.data(), static_cast<std::streamsize>(n))) fail("truncated");
        return s;
    }
    std::vector<double> get_doubles() {
        uint64_t n = get_u64();
        if (n > (1ULL << 32)) fail("implausible vector length");
        std::vector<double> v(n);
        for (uint64_t i = 0; i < n; ++i) {
            uint64_t bits = get_u64();
            std::memcpy(&v[i], &bits, sizeof(double));
        }
        return v;
    }
};

void put_standardizer(std::ostream& out, const Standardizer& s) {
    put_doubles(out, s.mean);
    put_doubles(out, s.scale);
}

Standardizer get_standardizer(Reader& r) {
    Standardizer s;
    s.mean = r.get_doubles();
    s.scale = r.get_doubles();
    return s;
}

void put_classes(std::ostream& out, const std::vector<std::string>& classes) {
    put_u64(out, classes.size());
    for (const auto& c : classes) put_string(out, c);
}

std::vector<std::string> get_classes(Reader& r) {
    uint64_t n = r.get_u64();
    if (n > 1024) r.fail("implausible class count");
    std::vector<std::string> out;
    for (uint64_t i = 0; i < n; ++i) out.push_back(r.get_string());
    return out;
}

}  // namespace

void save_model(const std::string& path, const AnyModel& model) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot open model file for writing: " + path);
    out.write(kMagic, 4);
    put_u32(out, kVersion);

    if (const auto* lin = std::get_if<LinearModel>(&model)) {
        out.put(static_cast<char>(kKindLinear));
        put_string(out, lin->layout_fingerprint);
        put_classes(out, lin->classes);
        put_standardizer(out, lin->standardizer);
        put_u64(out, lin->weights.size());
        for (const auto& w : lin->weights) put_doubles(out, w);
        put_doubles(out, lin->bias);
    } else {
        const auto& mlp = std::get<MlpModel>(model);
        out.put(static_cast<char>(kKindMlp));
        put_string(out, mlp.layout_fingerprint);
        put_classes(out, mlp.classes);
        put_standardizer(out, mlp.standardizer);
        put_string(out, mlp.activation);
        put_u64(out, mlp.layer_sizes.size());
        for (size_t s : mlp.layer_sizes) put_u64(out, s);
        put_u64(out, mlp.weights.size());
        for (const auto& w : mlp.weights) put_doubles(out, w);
        for (const auto& b : mlp.biases) put_doubles(out, b);
    }
    if (!out) throw Error("I/O error writing model file: " + path);
}

AnyModel load_model(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open model file: " + path);
    Reader r{in, path};

    char magic[4];
    if (!in.read(magic, 4) || std::memcmp(magic, kMagic, 4) != 0) {
        r.fail("bad magic");
    }
    uint32_t version = r.get_u32();
    if (version != kVersion) {
        throw Error("model file version " + std::to_string(version) +
                    " is not supported (expected " + std::to_string(kVersion) +
                    "): " + path);
    }
    int kind = in.get();
    if (kind == kKindLinear) {
        LinearModel lin;
        lin.layout_fingerprint = r.get_string();
        lin.classes = get_classes(r);
        lin.standardizer = get_standardizer(r);
        uint64_t n = r.get_u64();
        if (n > 1024) r.fail("implausible weight-vector count");
        for (uint64_t i = 0; i < n; ++i) lin.weights.push_back(r.get_doubles());
        lin.bias = r.get_doubles();
        if (lin.bias.size() != lin.weights.size()) r.fail("bias/weights mismatch");
        return lin;
    }
    if (kind == kKindMlp) {
        MlpModel mlp;
        mlp.layout_fingerprint = r.get_string();
        mlp.classes = get_classes(r);
        mlp.standardizer = get_standardizer(r);
        mlp.activation = r.get_string();
        uint64_t ls = r.get_u64();
        if (ls > 64) r.fail("implausible layer count");
        for (uint64_t i = 0; i < ls; ++i) {
            mlp.layer_sizes.push_back(static_cast<size_t>(r.get_u64()));
        }
        uint64_t lw = r.get_u64();
        if (lw + 1 != ls) r.fail("layer count mismatch");
        for (uint64_t i = 0; i < lw; ++i) mlp.weights.push_back(r.get_doubles());
        for (uint64_t i = 0; i < lw; ++i) mlp.biases.push_back(r.get_doubles());
        for (uint64_t l = 0; l < lw; ++l) {
            if (mlp.weights[l].size() != mlp.layer_sizes[l] * mlp.layer_sizes[l + 1] ||
                mlp.biases[l].size() != mlp.layer_sizes[l + 1]) {
                r.fail("weight shape mismatch");
            }
        }
        return mlp;
    }
    r.fail("unknown model kind");
    return LinearModel{};  // unreachable
}

const std::vector<std::string>& model_classes(const AnyModel& m) {
    return std::visit([](const auto& x) -> const std::vector<std::string>& {
        return x.classes;
    }, m);
}

const std::string& model_fingerprint(const AnyModel& m) {
    return std::visit([](const auto& x) -> const std::string& {
        return x.layout_fingerprint;
    }, m);
}

std::vector<double> model_raw_scores(const AnyModel& m, const FeatureVector& x) {
    if (const auto* lin = std::get_if<LinearModel>(&m)) {
        if (lin->binary()) {
            double margin = decision_value(*lin, x);
            return {margin, -margin};
        }
        return decision_values(*lin, x);
    }
    return predict_proba(std::get<MlpModel>(m), x);
}

}  // namespace argstruct
