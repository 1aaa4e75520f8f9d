#include "poincare/sets.hpp"

#include <cstdio>
#include <map>
#include <sstream>

namespace poincare {

namespace {

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void writeVec(std::ostringstream& os, const char* name, const Vector& v) {
    os << name << " =";
    for (int i = 0; i < v.size(); ++i) os << " " << fmt(v[i]);
    os << "\n";
}

void writeIVec(std::ostringstream& os, const char* name, const IntervalVector& v) {
    os << name << " =";
    for (int i = 0; i < v.size(); ++i)
        os << " [" << fmt(v[i].lo()) << ", " << fmt(v[i].hi()) << "]";
    os << "\n";
}

void writeMat(std::ostringstream& os, const char* name, const Matrix& m) {
    os << name << " = [";
    for (int i = 0; i < m.rows(); ++i) {
        if (i) os << "; ";
        for (int j = 0; j < m.cols(); ++j) {
            if (j) os << " ";
            os << fmt(m(i, j));
        }
    }
    os << "]\n";
}

class Reader {
public:
    explicit Reader(const std::string& text) : in_(text) {}

    bool nextLine(std::string& key, std::string& rhs) {
        std::string line;
        while (std::getline(in_, line)) {
            if (line.empty() || line[0] == '#') continue;
            auto eq = line.find('=');
            if (eq == std::string::npos) {
                key = trim(line);
                rhs.clear();
                return true;
            }
            key = trim(line.substr(0, eq));
            rhs = trim(line.substr(eq + 1));
            return true;
        }
        return false;
    }

    static std::string trim(const std::string& s) {
        auto b = s.find_first_not_of(" \t\r");
        auto e = s.find_last_not_of(" \t\r");
        if (b == std::string::npos) return "";
        return s.substr(b, e - b + 1);
    }

private:
    std::istringstream in_;
};

bool parseVec(const std::string& rhs, Vector& out) {
    std::istringstream is(rhs);
    std::vector<double> vals;
    double v;
    while (is >> v) vals.push_back(v);
    if (vals.empty()) return false;
    out = Eigen::Map<Vector>(vals.data(), static_cast<long>(vals.size()));
    return true;
}

bool parseIVec(const std::string& rhs, IntervalVector& out) {
    std::vector<Interval> vals;
    size_t pos = 0;
    while ((pos = rhs.find('[', pos)) != std::string::npos) {
        size_t end = rhs.find(']', pos);
        if (end == std::string::npos) return false;
        std::string body = rhs.substr(pos + 1, end - pos - 1);
        for (auto& ch : body)
            if (ch == ',') ch = ' ';
        std::istringstream is(body);
        double lo, hi;
        if (!(is >> lo >> hi)) return false;
        vals.push_back(Interval(lo, hi));
        pos = end + 1;
    }
    if (vals.empty()) return false;
    out = IntervalVector(static_cast<int>(vals.size()));
    for (size_t i = 0; i < vals.size(); ++i) out[static_cast<int>(i)] = vals[i];
    return true;
}

bool parseMat(const std::string& rhs, Matrix& out) {
    auto b = rhs.find('[');
    auto e = rhs.rfind(']');
    if (b == std::string::npos || e == std::string::npos || e <= b) return false;
    std::string body = rhs.substr(b + 1, e - b - 1);
    std::vector<std::vector<double>> rows;
    std::istringstream rowStream(body);
    std::string row;
    while (std::getline(rowStream, row, ';')) {
        std::istringstream is(row);
        std::vector<double> vals;
        double v;
        while (is >> v) vals.push_back(v);
        if (vals.empty()) return false;
        rows.push_back(vals);
    }
    if (rows.empty()) return false;
    out = Matrix(rows.size(), rows[0].size());
    for (size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != rows[0].size()) return false;
        for (size_t j = 0; j < rows[i].size(); ++j)
            out(static_cast<long>(i), static_cast<long>(j)) = rows[i][j];
    }
    return true;
}

}  // namespace

std::string toText(const RepresentableSet& X) {
    std::ostringstream os;
    if (const auto* b = std::get_if<BoxSet>(&X)) {
        os << "box\n";
        writeIVec(os, "hull", b->box);
        return os.str();
    }
    if (const auto* d = std::get_if<Doubleton>(&X)) {
        os << "doubleton\n";
        writeVec(os, "x", d->x);
        writeMat(os, "C", d->C);
        writeIVec(os, "r0", d->r0);
        writeMat(os, "Q", d->Q);
        writeIVec(os, "q", d->q);
        return os.str();
    }
    const auto& t = std::get<Tripleton>(X);
    os << "tripleton\n";
    writeVec(os, "x", t.x);
    writeMat(os, "C", t.C);
    writeIVec(os, "r0", t.r0);
    writeMat(os, "Q", t.Q);
    writeIVec(os, "q", t.q);
    writeMat(os, "B", t.B);
    writeIVec(os, "r", t.r);
    return os.str();
}

std::optional<RepresentableSet> fromText(const std::string& text) {
    Reader reader(text);
    std::string key, rhs;
    if (!reader.nextLine(key, rhs)) return std::nullopt;

    // Field names decide how the right-hand side parses: x is a point
    // vector, C/Q/B are matrices, r0/q/r/hull are interval vectors.
    std::map<std::string, Matrix> mats;
    std::map<std::string, Vector> vecs;
    std::map<std::string, IntervalVector> ivecs;
    std::string k, r;
    while (reader.nextLine(k, r)) {
        if (k == "x") {
            Vector v;
            if (!parseVec(r, v)) return std::nullopt;
            vecs[k] = v;
        } else if (k == "C" || k == "Q" || k == "B") {
            Matrix m;
            if (!parseMat(r, m)) return std::nullopt;
            mats[k] = m;
        } else if (k == "r0" || k == "q" || k == "r" || k == "hull") {
            IntervalVector v;
            if (!parseIVec(r, v)) return std::nullopt;
            ivecs[k] = v;
        } else {
            return std::nullopt;
        }
    }
    auto has = [](const auto& m, const char* name) { return m.count(name) > 0; };
    if (key == "box") {
        if (!has(ivecs, "hull")) return std::nullopt;
        return RepresentableSet(BoxSet{ivecs["hull"]});
    }
    if (key == "doubleton") {
        if (!has(vecs, "x") || !has(mats, "C") || !has(mats, "Q") || !has(ivecs, "r0") ||
            !has(ivecs, "q"))
            return std::nullopt;
        return RepresentableSet(Doubleton{vecs["x"], mats["C"], ivecs["r0"], mats["Q"], ivecs["q"]});
    }
    if (key == "tripleton") {
        if (!has(vecs, "x") || !has(mats, "C") || !has(mats, "Q") || !has(mats, "B") ||
            !has(ivecs, "r0") || !has(ivecs, "q") || !has(ivecs, "r"))
            return std::nullopt;
        return RepresentableSet(Tripleton{vecs["x"], mats["C"], ivecs["r0"], mats["Q"],
                                          ivecs["q"], mats["B"], ivecs["r"]});
    }
    return std::nullopt;
}

}  // namespace poincare
