// Shared test utilities: data loading and small graph constructors.

#ifndef DOLLO_TESTS_HELPERS_HPP
#define DOLLO_TESTS_HELPERS_HPP

#include <dollo/graph.hpp>
#include <dollo/matrix.hpp>

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace testutil {

inline std::string data_file(const std::string& name) {
    return std::string(DOLLO_DATA_DIR) + "/" + name;
}

inline std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

inline dollo::BinaryMatrix load_fig1() {
    return dollo::parse_matrix_csv(slurp(data_file("fig1.csv")));
}

inline dollo::Bitset species_set(const dollo::RedBlackGraph& g,
                                 const std::vector<std::string>& labels) {
    dollo::Bitset out(g.n());
    for (const std::string& l : labels) out.set(g.species_index(l));
    return out;
}

inline dollo::Bitset char_set(const dollo::RedBlackGraph& g,
                              const std::vector<std::string>& labels) {
    dollo::Bitset out(g.m());
    for (const std::string& l : labels) out.set(g.char_index(l));
    return out;
}

inline std::vector<std::size_t> char_ids(const dollo::RedBlackGraph& g,
                                         const std::vector<std::string>& labels) {
    std::vector<std::size_t> out;
    for (const std::string& l : labels) out.push_back(g.char_index(l));
    return out;
}

inline std::vector<std::string> char_names(const dollo::RedBlackGraph& g,
                                           const std::vector<std::size_t>& ids) {
    std::vector<std::string> out;
    for (std::size_t c : ids) out.push_back(g.char_labels[c]);
    return out;
}

inline std::vector<std::string> species_names(const dollo::RedBlackGraph& g,
                                              const dollo::Bitset& set) {
    std::vector<std::string> out;
    for (std::size_t s = set.find_first(); s != dollo::Bitset::npos;
         s = set.find_next(s))
        out.push_back(g.species_labels[s]);
    return out;
}

inline std::vector<std::string> char_names(const dollo::RedBlackGraph& g,
                                           const dollo::Bitset& set) {
    std::vector<std::string> out;
    for (std::size_t c = set.find_first(); c != dollo::Bitset::npos;
         c = set.find_next(c))
        out.push_back(g.char_labels[c]);
    return out;
}

}  // namespace testutil

#endif  // DOLLO_TESTS_HELPERS_HPP
