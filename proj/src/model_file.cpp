#include "hetlda/model_file.hpp"

#include <fstream>
#include <vector>

#include "hetlda/error.hpp"

namespace hetlda {

using nlohmann::json;

json to_json(const ModelFile& file) {
    json pairs = json::array();
    for (const auto& p : file.model.pairs) {
        pairs.push_back({{"class_a", p.class_a},
                         {"class_b", p.class_b},
                         {"w", std::vector<double>(p.disc.w.data(), p.disc.w.data() + p.disc.w.size())},
                         {"w0", p.disc.w0},
                         {"p_e", p.bayes_error}});
    }
    return {{"format", "hetlda-model"},
            {"version", kModelFormatVersion},
            {"method", file.method},
            {"num_classes", file.model.num_classes},
            {"dimension", file.model.dimension()},
            {"class_names", file.model.class_names},
            {"pairs", std::move(pairs)},
            {"training", file.training}};
}

ModelFile model_from_json(const json& j) {
    try {
        if (!j.is_object() || j.value("format", "") != "hetlda-model")
            throw Error(ErrorKind::ParseError, "not a hetlda model file");
        const int version = j.at("version").get<int>();
        if (version != kModelFormatVersion)
            throw Error(ErrorKind::VersionMismatch, "model format version " + std::to_string(version) +
                                                        ", this build reads version " +
                                                        std::to_string(kModelFormatVersion));
        ModelFile file;
        file.method = j.at("method").get<std::string>();
        file.training = j.value("training", json::object());
        OvoModel& m = file.model;
        m.num_classes = j.at("num_classes").get<int>();
        m.class_names = j.at("class_names").get<std::vector<std::string>>();
        const auto dim = j.at("dimension").get<Eigen::Index>();
        if (m.num_classes < 2 || static_cast<int>(m.class_names.size()) != m.num_classes)
            throw Error(ErrorKind::ParseError, "class list does not match num_classes");

        int next_a = 0, next_b = 1;
        for (const auto& p : j.at("pairs")) {
            PairModel pair;
            pair.class_a = p.at("class_a").get<int>();
            pair.class_b = p.at("class_b").get<int>();
            const auto w = p.at("w").get<std::vector<double>>();
            pair.disc.w = Eigen::Map<const Vector>(w.data(), static_cast<Eigen::Index>(w.size()));
            pair.disc.w0 = p.at("w0").get<double>();
            pair.bayes_error = p.at("p_e").get<double>();
            if (pair.class_a != next_a || pair.class_b != next_b)
                throw Error(ErrorKind::ParseError, "pairs must be listed as (0,1), (0,2), ..., (K-2,K-1)");
            if (++next_b == m.num_classes) next_b = ++next_a + 1;
            if (!(pair.bayes_error >= 0.0 && pair.bayes_error <= 1.0))
                throw Error(ErrorKind::ParseError, "pair p_e outside [0, 1]");
            if (pair.disc.w.size() != dim)
                throw Error(ErrorKind::ParseError, "pair weight length does not match dimension");
            m.pairs.push_back(std::move(pair));
        }
        if (static_cast<int>(m.pairs.size()) != m.num_classes * (m.num_classes - 1) / 2)
            throw Error(ErrorKind::ParseError, "model must hold one classifier per class pair");
        return file;
    } catch (const json::exception& e) {
        throw Error(ErrorKind::ParseError, std::string("malformed model file: ") + e.what());
    }
}

void save_model(const ModelFile& file, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw Error(ErrorKind::IoError, "cannot write '" + path.string() + "'");
    out << to_json(file).dump(2) << '\n';
    out.flush();
    if (!out) throw Error(ErrorKind::IoError, "failed writing '" + path.string() + "'");
}

ModelFile load_model(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::IoError, "cannot open '" + path.string() + "'");
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw Error(ErrorKind::ParseError, "'" + path.string() + "' is not valid JSON: " + e.what());
    }
    return model_from_json(j);
}

}  // namespace hetlda
