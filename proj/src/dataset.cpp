#include "mlpw/dataset.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <random>
#include <sstream>
#include <unordered_map>

#include "mlpw/errors.hpp"
#include "mlpw/rng.hpp"

namespace mlpw {

namespace {

std::string trim(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    std::size_t e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

std::string lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return std::tolower(c); });
    return s;
}

std::string unquote(const std::string& s) {
    if (s.size() >= 2 && ((s.front() == '\'' && s.back() == '\'') ||
                          (s.front() == '"' && s.back() == '"')))
        return s.substr(1, s.size() - 2);
    return s;
}

std::vector<std::string> split_fields(const std::string& line, char sep) {
    std::vector<std::string> out;
    std::string field;
    std::stringstream ss(line);
    while (std::getline(ss, field, sep)) out.push_back(trim(field));
    if (!line.empty() && line.back() == sep) out.push_back("");
    return out;
}

double parse_number(const std::string& s, std::size_t line_no) {
    const std::string t = trim(s);
    if (t.empty()) throw parse_error("empty numeric field", line_no);
    char* end = nullptr;
    const double v = std::strtod(t.c_str(), &end);
    if (end != t.c_str() + t.size())
        throw parse_error("cannot parse numeric value '" + t + "'", line_no);
    return v;
}

int parse_binary(double v, bool binarize, std::size_t line_no) {
    if (binarize) return v > 0.0 ? 1 : 0;
    if (v == 0.0) return 0;
    if (v == 1.0) return 1;
    throw parse_error("label value must be 0 or 1, got " + std::to_string(v), line_no);
}

struct Attribute {
    std::string name;
    bool numeric = false;
    bool binary_nominal = false;  // nominal with value set {0,1}
    std::size_t line_no = 0;
};

// Resolves which attribute columns are labels. Explicit names win; otherwise
// the trailing k attributes are labels.
std::vector<bool> label_mask(const std::vector<Attribute>& attrs, const LabelSpec& spec) {
    std::vector<bool> mask(attrs.size(), false);
    if (!spec.names.empty()) {
        std::unordered_map<std::string, std::size_t> index;
        for (std::size_t i = 0; i < attrs.size(); ++i) index[attrs[i].name] = i;
        for (const auto& name : spec.names) {
            auto it = index.find(name);
            if (it == index.end())
                throw config_error("label attribute '" + name + "' not found in file");
            mask[it->second] = true;
        }
    } else {
        if (spec.trailing_count <= 0)
            throw config_error("label spec: need explicit names or a positive trailing count");
        if (static_cast<std::size_t>(spec.trailing_count) > attrs.size())
            throw config_error("label spec: trailing count exceeds attribute count");
        for (std::size_t i = attrs.size() - spec.trailing_count; i < attrs.size(); ++i)
            mask[i] = true;
    }
    return mask;
}

MultiLabelDataset assemble(const std::vector<Attribute>& attrs, const std::vector<bool>& is_label,
                           const std::vector<std::vector<double>>& rows,
                           const std::vector<std::size_t>& row_lines,
                           const LabelSpec& spec) {
    for (std::size_t i = 0; i < attrs.size(); ++i) {
        if (is_label[i]) {
            if (!attrs[i].numeric && !attrs[i].binary_nominal)
                throw parse_error("label attribute '" + attrs[i].name +
                                      "' must be numeric or nominal {0,1}",
                                  attrs[i].line_no);
        } else if (!attrs[i].numeric) {
            throw parse_error("unsupported attribute '" + attrs[i].name +
                                  "': features must be numeric",
                              attrs[i].line_no);
        }
    }
    if (rows.empty()) throw parse_error("no data rows");

    MultiLabelDataset ds;
    std::vector<std::size_t> fcols, lcols;
    for (std::size_t i = 0; i < attrs.size(); ++i) (is_label[i] ? lcols : fcols).push_back(i);
    if (lcols.size() < 2) throw config_error("need at least 2 label attributes");
    if (fcols.empty()) throw config_error("need at least 1 feature attribute");

    // Labels in label_spec order when names were given, file order otherwise.
    if (!spec.names.empty()) {
        std::unordered_map<std::string, std::size_t> index;
        for (std::size_t i = 0; i < attrs.size(); ++i) index[attrs[i].name] = i;
        lcols.clear();
        for (const auto& name : spec.names) lcols.push_back(index.at(name));
    }

    ds.features.resize(static_cast<Eigen::Index>(rows.size()),
                       static_cast<Eigen::Index>(fcols.size()));
    ds.labels.resize(static_cast<Eigen::Index>(rows.size()),
                     static_cast<Eigen::Index>(lcols.size()));
    for (std::size_t r = 0; r < rows.size(); ++r) {
        if (rows[r].size() != attrs.size())
            throw parse_error("row has " + std::to_string(rows[r].size()) + " values, expected " +
                                  std::to_string(attrs.size()),
                              row_lines[r]);
        for (std::size_t j = 0; j < fcols.size(); ++j)
            ds.features(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(j)) =
                rows[r][fcols[j]];
        for (std::size_t j = 0; j < lcols.size(); ++j)
            ds.labels(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(j)) =
                parse_binary(rows[r][lcols[j]], spec.binarize, row_lines[r]);
    }
    for (std::size_t j : fcols) ds.feature_names.push_back(attrs[j].name);
    for (std::size_t j : lcols) ds.label_names.push_back(attrs[j].name);
    return ds;
}

}  // namespace

LabelSpec parse_label_spec(const std::string& text) {
    const std::string t = trim(text);
    if (t.empty()) throw config_error("empty label spec");
    if (lower(t).rfind("last:", 0) == 0) {
        int k = 0;
        const std::string num = t.substr(5);
        auto [p, ec] = std::from_chars(num.data(), num.data() + num.size(), k);
        if (ec != std::errc{} || p != num.data() + num.size() || k <= 0)
            throw config_error("bad trailing-count label spec '" + t + "'");
        return LabelSpec::trailing(k);
    }
    return LabelSpec::by_names(split_fields(t, ','));
}

MultiLabelDataset load_arff(const std::string& path, const LabelSpec& spec) {
    std::ifstream in(path);
    if (!in) throw config_error("cannot open dataset file '" + path + "'");

    std::vector<Attribute> attrs;
    std::vector<std::vector<double>> rows;
    std::vector<std::size_t> row_lines;
    bool in_data = false;
    std::string line;
    std::size_t line_no = 0;

    while (std::getline(in, line)) {
        ++line_no;
        const std::string t = trim(line);
        if (t.empty() || t[0] == '%') continue;
        if (!in_data) {
            const std::string low = lower(t);
            if (low.rfind("@relation", 0) == 0) continue;
            if (low.rfind("@data", 0) == 0) {
                in_data = true;
                continue;
            }
            if (low.rfind("@attribute", 0) == 0) {
                std::string rest = trim(t.substr(10));
                Attribute a;
                a.line_no = line_no;
                if (!rest.empty() && (rest[0] == '\'' || rest[0] == '"')) {
                    const char q = rest[0];
                    const std::size_t close = rest.find(q, 1);
                    if (close == std::string::npos)
                        throw parse_error("unterminated quoted attribute name", line_no);
                    a.name = rest.substr(1, close - 1);
                    rest = trim(rest.substr(close + 1));
                } else {
                    const std::size_t sp = rest.find_first_of(" \t");
                    if (sp == std::string::npos)
                        throw parse_error("attribute declaration missing a type", line_no);
                    a.name = rest.substr(0, sp);
                    rest = trim(rest.substr(sp));
                }
                const std::string type = lower(rest);
                if (type == "numeric" || type == "real" || type == "integer") {
                    a.numeric = true;
                } else if (!rest.empty() && rest[0] == '{') {
                    if (rest.back() != '}')
                        throw parse_error("unterminated nominal value list", line_no);
                    auto values = split_fields(rest.substr(1, rest.size() - 2), ',');
                    for (auto& v : values) v = unquote(v);
                    std::sort(values.begin(), values.end());
                    a.binary_nominal =
                        values == std::vector<std::string>{"0", "1"} ||
                        values == std::vector<std::string>{"0"} ||
                        values == std::vector<std::string>{"1"};
                }
                attrs.push_back(std::move(a));
                continue;
            }
            throw parse_error("unrecognized header directive '" + t + "'", line_no);
        }
        if (t[0] == '{')
            throw parse_error("sparse ARFF data is not supported", line_no);
        const auto fields = split_fields(t, ',');
        std::vector<double> row;
        row.reserve(fields.size());
        for (const auto& f : fields) {
            const std::string v = unquote(f);
            if (v == "?") throw parse_error("missing values are not supported", line_no);
            row.push_back(parse_number(v, line_no));
        }
        rows.push_back(std::move(row));
        row_lines.push_back(line_no);
    }
    if (!in_data) throw parse_error("missing @data section");
    if (attrs.empty()) throw parse_error("missing @attribute declarations");
    return assemble(attrs, label_mask(attrs, spec), rows, row_lines, spec);
}

MultiLabelDataset load_csv(const std::string& path, const LabelSpec& spec) {
    std::ifstream in(path);
    if (!in) throw config_error("cannot open dataset file '" + path + "'");

    std::string line;
    std::size_t line_no = 0;
    if (!std::getline(in, line)) throw parse_error("empty CSV file");
    ++line_no;
    std::vector<Attribute> attrs;
    for (const auto& name : split_fields(trim(line), ',')) {
        if (name.empty()) throw parse_error("empty column name in CSV header", line_no);
        attrs.push_back(Attribute{unquote(name), true, false, line_no});
    }

    std::vector<std::vector<double>> rows;
    std::vector<std::size_t> row_lines;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string t = trim(line);
        if (t.empty()) continue;
        const auto fields = split_fields(t, ',');
        std::vector<double> row;
        row.reserve(fields.size());
        for (const auto& f : fields) row.push_back(parse_number(f, line_no));
        rows.push_back(std::move(row));
        row_lines.push_back(line_no);
    }
    const auto mask = label_mask(attrs, spec);
    for (std::size_t i = 0; i < attrs.size(); ++i)
        if (mask[i]) attrs[i].binary_nominal = true;
    return assemble(attrs, mask, rows, row_lines, spec);
}

MultiLabelDataset load_dataset(const std::string& path, const LabelSpec& spec) {
    const std::string low = lower(path);
    if (low.size() >= 5 && low.compare(low.size() - 5, 5, ".arff") == 0)
        return load_arff(path, spec);
    return load_csv(path, spec);
}

void write_csv(const MultiLabelDataset& ds, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw config_error("cannot open '" + path + "' for writing");
    for (Eigen::Index j = 0; j < ds.d(); ++j) out << ds.feature_names[j] << ',';
    for (Eigen::Index j = 0; j < ds.l(); ++j)
        out << ds.label_names[j] << (j + 1 < ds.l() ? ',' : '\n');
    char buf[40];
    for (Eigen::Index i = 0; i < ds.n(); ++i) {
        for (Eigen::Index j = 0; j < ds.d(); ++j) {
            std::snprintf(buf, sizeof buf, "%.17g", ds.features(i, j));
            out << buf << ',';
        }
        for (Eigen::Index j = 0; j < ds.l(); ++j)
            out << ds.labels(i, j) << (j + 1 < ds.l() ? ',' : '\n');
    }
}

MultiLabelDataset subset(const MultiLabelDataset& ds, const std::vector<std::size_t>& rows) {
    MultiLabelDataset out;
    out.feature_names = ds.feature_names;
    out.label_names = ds.label_names;
    out.features.resize(static_cast<Eigen::Index>(rows.size()), ds.d());
    out.labels.resize(static_cast<Eigen::Index>(rows.size()), ds.l());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        out.features.row(static_cast<Eigen::Index>(i)) =
            ds.features.row(static_cast<Eigen::Index>(rows[i]));
        out.labels.row(static_cast<Eigen::Index>(i)) =
            ds.labels.row(static_cast<Eigen::Index>(rows[i]));
    }
    return out;
}

std::pair<MultiLabelDataset, MultiLabelDataset> split_train_validation(
    const MultiLabelDataset& ds, const SplitSpec& spec) {
    const std::size_t n = static_cast<std::size_t>(ds.n());
    if (n < 2) throw config_error("split: need at least 2 instances");
    if (!(spec.t > 0.0 && spec.t < 1.0)) throw config_error("split: t must lie in (0,1)");
    const std::size_t n_train =
        static_cast<std::size_t>(std::lround(spec.t * static_cast<double>(n)));
    if (n_train == 0 || n_train == n)
        throw config_error("split: degenerate split (train size " + std::to_string(n_train) +
                           " of " + std::to_string(n) + ")");

    std::mt19937_64 rng(spec.seed);
    auto perm = shuffled_indices(n, rng);
    std::vector<std::size_t> train(perm.begin(), perm.begin() + n_train);
    std::vector<std::size_t> val(perm.begin() + n_train, perm.end());
    std::sort(train.begin(), train.end());
    std::sort(val.begin(), val.end());
    return {subset(ds, train), subset(ds, val)};
}

std::vector<FoldIndices> kfold_indices(std::size_t n, int folds, std::uint64_t seed) {
    if (folds < 2) throw config_error("kfold: need at least 2 folds");
    if (static_cast<std::size_t>(folds) > n)
        throw config_error("kfold: more folds than instances");

    std::mt19937_64 rng(seed);
    const auto perm = shuffled_indices(n, rng);
    const std::size_t base = n / folds;
    const std::size_t extra = n % folds;

    std::vector<FoldIndices> out(folds);
    std::size_t pos = 0;
    for (int f = 0; f < folds; ++f) {
        const std::size_t size = base + (static_cast<std::size_t>(f) < extra ? 1 : 0);
        out[f].test.assign(perm.begin() + pos, perm.begin() + pos + size);
        pos += size;
    }
    for (int f = 0; f < folds; ++f) {
        auto& fi = out[f];
        std::sort(fi.test.begin(), fi.test.end());
        fi.train.reserve(n - fi.test.size());
        for (int g = 0; g < folds; ++g)
            if (g != f) fi.train.insert(fi.train.end(), out[g].test.begin(), out[g].test.end());
        std::sort(fi.train.begin(), fi.train.end());
    }
    return out;
}

}  // namespace mlpw
