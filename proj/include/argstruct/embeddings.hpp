#ifndef ARGSTRUCT_EMBEDDINGS_HPP
#define ARGSTRUCT_EMBEDDINGS_HPP

#include <string>
#include <unordered_map>
#include <vector>

namespace argstruct {

class EmbeddingTable {
public:
    EmbeddingTable() = default;
    explicit EmbeddingTable(int dimension) : dim_(dimension) {}

    int dimension() const { return dim_; }
    size_t size() const { return table_.size(); }

    // nullptr when the word is absent; an OOV word is therefore
    // distinguishable from one mapped to the zero vector.
    const std::vector<double>* lookup(const std::string& word) const {
        auto it = table_.find(word);
        return it == table_.end() ? nullptr : &it->second;
    }

    // Duplicate inserts keep the first occurrence.
    void insert(const std::string& word, std::vector<double> vec);

private:
    int dim_ = 0;
    std::unordered_map<std::string, std::vector<double>> table_;
};

// word2vec text format: header "<count> <dim>", then one word per line
// followed by <dim> reals.
EmbeddingTable load_embeddings(const std::string& path);
EmbeddingTable parse_embeddings(std::istream& in, const std::string& origin);

}  // namespace argstruct

#endif
