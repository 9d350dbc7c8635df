#include "agboost/data.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <numeric>
#include <ostream>
#include <set>
#include <sstream>
#include <stdexcept>

#include "agboost/errors.hpp"
#include "agboost/hypothesis.hpp"
#include "agboost/oracles.hpp"

namespace agboost {
namespace {

std::string trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split_row(const std::string& line) {
    std::vector<std::string> cells;
    std::size_t start = 0;
    while (true) {
        const auto comma = line.find(',', start);
        cells.push_back(trim(std::string_view(line).substr(start, comma - start)));
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    return cells;
}

bool parse_double(const std::string& s, double& out) {
    if (s.empty()) return false;
    const char* b = s.data();
    const char* e = b + s.size();
    if (*b == '+') ++b;
    auto [ptr, ec] = std::from_chars(b, e, out);
    return ec == std::errc() && ptr == e && std::isfinite(out);
}

}  // namespace

Dataset parse_csv(std::istream& in, const CsvOptions& opts) {
    std::vector<std::vector<std::string>> rows;
    std::vector<std::size_t> line_numbers;
    std::string line;
    std::size_t line_no = 0;
    bool header_pending = opts.has_header;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (trim(line).empty()) continue;
        if (header_pending) {
            header_pending = false;
            continue;
        }
        rows.push_back(split_row(line));
        line_numbers.push_back(line_no);
    }
    if (rows.empty()) throw DataError("CSV contains no data rows");

    const std::size_t width = rows.front().size();
    if (width < 2) throw DataError("CSV needs at least one feature and a label column");
    const std::size_t label_col = opts.label_column.value_or(width - 1);
    if (label_col >= width) throw DataError("label column outside the row width");

    std::string neg, pos;
    if (opts.label_encoding) {
        std::tie(neg, pos) = *opts.label_encoding;
    } else {
        std::set<std::string> labels;
        for (const auto& r : rows)
            if (r.size() == width) labels.insert(r[label_col]);
        if (labels.size() != 2)
            throw DataError("expected exactly two distinct labels, found " + std::to_string(labels.size()));
        neg = *labels.begin();
        pos = *labels.rbegin();
    }

    Dataset data(width - 1);
    data.reserve(rows.size());
    std::vector<double> x(width - 1);
    for (std::size_t r = 0; r < rows.size(); ++r) {
        const auto& cells = rows[r];
        const std::string where = "line " + std::to_string(line_numbers[r]);
        if (cells.size() != width)
            throw DataError(where + ": expected " + std::to_string(width) + " columns, found " +
                            std::to_string(cells.size()));
        int y;
        if (cells[label_col] == pos)
            y = 1;
        else if (cells[label_col] == neg)
            y = -1;
        else
            throw DataError(where + ": label '" + cells[label_col] + "' is not in the declared encoding");
        std::size_t j = 0;
        for (std::size_t c = 0; c < width; ++c) {
            if (c == label_col) continue;
            if (!parse_double(cells[c], x[j]))
                throw DataError(where + ": cannot parse '" + cells[c] + "' as a number");
            ++j;
        }
        data.add(x, y);
    }
    return data;
}

Dataset load_csv(const std::filesystem::path& path, const CsvOptions& opts) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot open " + path.string());
    try {
        return parse_csv(in, opts);
    } catch (const DataError& e) {
        throw DataError(path.string() + ": " + e.what());
    }
}

void write_csv(const Dataset& data, std::ostream& out) {
    char buf[64];
    for (std::size_t i = 0; i < data.size(); ++i) {
        for (double v : data.row(i)) {
            auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
            out.write(buf, ptr - buf);
            out.put(',');
        }
        out << data.label(i) << '\n';
    }
}

Dataset inject_noise(const Dataset& data, const NoisePlan& plan) {
    if (!(plan.rate >= 0.0 && plan.rate <= 0.5)) throw std::invalid_argument("noise rate must lie in [0, 0.5]");
    Dataset out = data;
    if (plan.rate == 0.0) return out;
    Rng rng(plan.seed);
    for (std::size_t i = 0; i < out.size(); ++i)
        if (bernoulli(rng, plan.rate)) out.set_label(i, -out.label(i));
    return out;
}

std::vector<std::size_t> FoldPlan::test_indices(std::size_t fold) const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < assignment.size(); ++i)
        if (assignment[i] == fold) out.push_back(i);
    return out;
}

std::vector<std::size_t> FoldPlan::train_indices(std::size_t fold) const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < assignment.size(); ++i)
        if (assignment[i] != fold) out.push_back(i);
    return out;
}

FoldPlan kfold(std::size_t n, std::size_t k, std::uint64_t seed) {
    if (k < 2) throw std::invalid_argument("need at least two folds");
    if (k > n) throw std::invalid_argument("more folds than examples");
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    Rng rng(seed);
    for (std::size_t i = n; i > 1; --i) std::swap(order[i - 1], order[uniform_index(rng, i)]);
    FoldPlan plan{k, seed, std::vector<std::size_t>(n)};
    for (std::size_t pos = 0; pos < n; ++pos) plan.assignment[order[pos]] = pos % k;
    return plan;
}

FiniteDistribution gen_halfspace(std::size_t n, std::span<const double> w, double theta, double corrupt_rate) {
    if (n == 0 || n > 24) throw std::invalid_argument("halfspace enumeration supports 1 <= n <= 24");
    if (w.size() != n) throw std::invalid_argument("weight vector length must equal n");
    if (!(corrupt_rate >= 0.0 && corrupt_rate <= 0.5)) throw std::invalid_argument("corruption rate must lie in [0, 0.5]");
    const std::size_t points = std::size_t{1} << n;
    const double mass = 1.0 / static_cast<double>(points);
    std::vector<Atom> atoms;
    atoms.reserve(corrupt_rate > 0.0 ? 2 * points : points);
    std::vector<double> x(n);
    for (std::size_t mask = 0; mask < points; ++mask) {
        double dot = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            x[i] = (mask >> i) & 1 ? 1.0 : -1.0;
            dot += w[i] * x[i];
        }
        const int label = sign_of(dot - theta);
        if (corrupt_rate > 0.0) {
            atoms.push_back({x, label, mass * (1.0 - corrupt_rate)});
            atoms.push_back({x, -label, mass * corrupt_rate});
        } else {
            atoms.push_back({x, label, mass});
        }
    }
    return FiniteDistribution(std::move(atoms));
}

HalfspaceSource::HalfspaceSource(std::vector<double> w, double theta, double corrupt_rate)
    : w_(std::move(w)), theta_(theta), corrupt_(corrupt_rate) {
    if (w_.empty()) throw std::invalid_argument("empty weight vector");
    if (!(corrupt_rate >= 0.0 && corrupt_rate <= 0.5)) throw std::invalid_argument("corruption rate must lie in [0, 0.5]");
}

LabeledExample HalfspaceSource::draw(Rng& rng) {
    LabeledExample e{std::vector<double>(w_.size()), 1};
    double dot = 0.0;
    for (std::size_t i = 0; i < w_.size(); ++i) {
        e.x[i] = random_sign(rng);
        dot += w_[i] * e.x[i];
    }
    e.y = sign_of(dot - theta_);
    if (bernoulli(rng, corrupt_)) e.y = -e.y;
    return e;
}

PlantedInstance gen_planted(std::size_t domain_size, std::size_t class_size, double best_corr, std::uint64_t seed) {
    if (domain_size == 0 || class_size == 0) throw std::invalid_argument("empty planted instance");
    if (!(best_corr >= 0.0 && best_corr <= 1.0)) throw std::invalid_argument("best_corr must lie in [0, 1]");
    for (std::uint64_t attempt = 0; attempt < 1000; ++attempt) {
        const std::uint64_t s = attempt == 0 ? seed : derive_seed(seed, attempt);
        Rng rng(s);
        std::vector<HypothesisPtr> hyps;
        for (std::size_t k = 0; k < class_size; ++k) hyps.push_back(random_binary_table(domain_size, rng));
        const std::size_t best = uniform_index(rng, class_size);
        const auto& star = static_cast<const TableHypothesis&>(*hyps[best]).table();

        const double mass = 1.0 / static_cast<double>(domain_size);
        const double keep = (1.0 + best_corr) / 2.0;
        std::vector<Atom> atoms;
        for (std::size_t x = 0; x < domain_size; ++x) {
            const double xv = static_cast<double>(x);
            atoms.push_back({{xv}, star[x], mass * keep});
            if (keep < 1.0) atoms.push_back({{xv}, -star[x], mass * (1.0 - keep)});
        }
        FiniteDistribution dist(std::move(atoms));

        // enumeration gate: h* must be the unique maximizer
        bool ok = true;
        const double target = exact_corr(dist, *hyps[best]);
        for (std::size_t k = 0; k < class_size && ok; ++k)
            if (k != best && exact_corr(dist, *hyps[k]) >= target - 1e-12 &&
                static_cast<const TableHypothesis&>(*hyps[k]).table() != star)
                ok = false;
        if (!ok) continue;
        return {std::move(dist), FiniteClass(hyps), best, hyps[best], s};
    }
    throw std::runtime_error("could not draw a planted instance");
}

}  // namespace agboost
