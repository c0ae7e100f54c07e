#include "hetlda/methods.hpp"

#include <string>

#include "hetlda/error.hpp"

namespace hetlda {

std::string_view to_string(Method method) noexcept {
    switch (method) {
        case Method::lda: return "lda";
        case Method::chld: return "chld";
        case Method::rhld1: return "rhld1";
        case Method::rhld2: return "rhld2";
        case Method::gld: return "gld";
        case Method::gld_lns: return "gld-lns";
    }
    return "unknown";
}

Method parse_method(std::string_view name) {
    for (Method m : {Method::lda, Method::chld, Method::rhld1, Method::rhld2, Method::gld, Method::gld_lns}) {
        if (name == to_string(m)) return m;
    }
    throw Error(ErrorKind::InvalidArgument, "unknown method '" + std::string(name) + "'");
}

std::vector<Method> parse_method_list(std::string_view comma_separated) {
    std::vector<Method> out;
    std::size_t start = 0;
    while (start <= comma_separated.size()) {
        const auto end = comma_separated.find(',', start);
        const auto token = comma_separated.substr(start, end == std::string_view::npos ? end : end - start);
        if (token.empty())
            throw Error(ErrorKind::InvalidArgument,
                        "empty entry in method list '" + std::string(comma_separated) + "'");
        out.push_back(parse_method(token));
        if (end == std::string_view::npos) break;
        start = end + 1;
    }
    return out;
}

BinaryTrainer make_trainer(Method method, const TrainerConfig& cfg) {
    auto from_baseline = [](const BaselineResult& r) { return BinaryFit{r.disc, r.bayes_error}; };
    switch (method) {
        case Method::lda:
            return [=](const BinaryProblem& p) {
                return from_baseline(train_lda(p.stats.first, p.stats.second, p.stats.priors));
            };
        case Method::chld:
            return [=](const BinaryProblem& p) {
                return from_baseline(train_chld(p.stats.first, p.stats.second, p.stats.priors, cfg.sweep));
            };
        case Method::rhld1:
            return [=](const BinaryProblem& p) {
                return from_baseline(train_rhld1(p.stats.first, p.stats.second, p.stats.priors, cfg.sweep));
            };
        case Method::rhld2:
            return [=](const BinaryProblem& p) {
                return from_baseline(train_rhld2(p.stats.first, p.stats.second, p.stats.priors, cfg.sweep));
            };
        case Method::gld:
            return [=](const BinaryProblem& p) {
                const GldResult r = train_gld(p.stats.first, p.stats.second, p.stats.priors, cfg.gld);
                return BinaryFit{r.disc, r.bayes_error};
            };
        case Method::gld_lns:
            return [=](const BinaryProblem& p) {
                const GldResult g = train_gld(p.stats.first, p.stats.second, p.stats.priors, cfg.gld);
                const LnsResult r = local_neighbourhood_search(g.disc, p.data, p.class_a, p.class_b, cfg.lns);
                const auto n = p.stats.first.count + p.stats.second.count;
                return BinaryFit{r.disc, static_cast<double>(r.error_count) / static_cast<double>(n)};
            };
    }
    throw Error(ErrorKind::InvalidArgument, "unknown method");
}

}  // namespace hetlda
