#include "argstruct/embeddings.hpp"

#include <fstream>
#include <istream>
#include <sstream>

#include "argstruct/common.hpp"

namespace argstruct {

void EmbeddingTable::insert(const std::string& word, std::vector<double> vec) {
    if (static_cast<int>(vec.size()) != dim_) {
        throw Error("embedding for '" + word + "' has dimension " +
                    std::to_string(vec.size()) + ", expected " + std::to_string(dim_));
    }
    table_.emplace(word, std::move(vec));
}

EmbeddingTable parse_embeddings(std::istream& in, const std::string& origin) {
    std::string header;
    if (!std::getline(in, header)) {
        throw Error("embedding file is empty: " + origin);
    }
    std::istringstream hs(header);
    long long count = -1, dim = -1;
    if (!(hs >> count >> dim) || count < 0 || dim <= 0) {
        throw Error("malformed word2vec header '" + header + "' in " + origin);
    }
    std::string extra;
    if (hs >> extra) {
        throw Error("malformed word2vec header '" + header + "' in " + origin);
    }

    EmbeddingTable table(static_cast<int>(dim));
    std::string line;
    size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        std::istringstream ls(line);
        std::string word;
        ls >> word;
        std::vector<double> vec;
        vec.reserve(static_cast<size_t>(dim));
        double v;
        while (ls >> v) vec.push_back(v);
        if (static_cast<long long>(vec.size()) != dim) {
            throw Error("embedding row " + std::to_string(lineno) + " for '" + word +
                        "' has " + std::to_string(vec.size()) + " values, expected " +
                        std::to_string(dim) + " in " + origin);
        }
        table.insert(word, std::move(vec));
    }
    return table;
}

EmbeddingTable load_embeddings(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open embedding file: " + path);
    return parse_embeddings(in, path);
}

}  // namespace argstruct
