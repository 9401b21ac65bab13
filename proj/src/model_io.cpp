#include "spectral_clt/model_io.hpp"

#include "spectral_clt/errors.hpp"

#include <fstream>
#include <json.hpp>

namespace spectral_clt {

namespace {

using nlohmann::json;

Mat parse_matrix(const json& j, int K, const std::string& key) {
    if (!j.is_array() || static_cast<int>(j.size()) != K)
        throw validation_error("model: '" + key + "' must be a " + std::to_string(K) +
                               "-row matrix");
    Mat M(K, K);
    for (int r = 0; r < K; ++r) {
        const json& row = j[r];
        if (!row.is_array() || static_cast<int>(row.size()) != K)
            throw validation_error("model: '" + key + "' row " + std::to_string(r) +
                                   " must have " + std::to_string(K) + " entries");
        for (int c = 0; c < K; ++c) {
            if (!row[c].is_number())
                throw validation_error("model: '" + key + "' entries must be numbers");
            M(r, c) = row[c].get<double>();
        }
    }
    return M;
}

} // namespace

LoadedModel load_model(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw io_error("model: cannot open '" + path + "'");
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& e) {
        throw io_error("model: cannot parse '" + path + "': " + e.what());
    }

    if (!j.is_object())
        throw validation_error("model: top level must be an object");
    if (!j.contains("k") || !j["k"].is_number_integer())
        throw validation_error("model: integer key 'k' required");
    int K = j["k"].get<int>();
    if (K <= 0)
        throw validation_error("model: 'k' must be positive");
    if (!j.contains("sizes") || !j["sizes"].is_array() ||
        static_cast<int>(j["sizes"].size()) != K)
        throw validation_error("model: 'sizes' must be an array of k integers");
    std::vector<int> sizes(K);
    for (int i = 0; i < K; ++i) {
        if (!j["sizes"][i].is_number_integer())
            throw validation_error("model: 'sizes' entries must be integers");
        sizes[i] = j["sizes"][i].get<int>();
    }

    LoadedModel m;
    m.path = path;
    if (j.contains("ptilde")) {
        m.has_sbm = true;
        m.sbm.sizes = sizes;
        m.sbm.Ptilde = parse_matrix(j["ptilde"], K, "ptilde");
        validate_spec(m.sbm);
        m.params = sbm_to_block_params(m.sbm);
    } else if (j.contains("q2") && j.contains("q3") && j.contains("q4")) {
        m.params = make_block_params(sizes, parse_matrix(j["q2"], K, "q2"),
                                     parse_matrix(j["q3"], K, "q3"),
                                     parse_matrix(j["q4"], K, "q4"));
    } else {
        throw validation_error("model: need either 'ptilde' or all of 'q2','q3','q4'");
    }
    return m;
}

} // namespace spectral_clt
