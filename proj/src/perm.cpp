#include "grouprec/perm.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <stdexcept>

namespace grouprec {

Permutation Permutation::identity(int n) {
    if (n < 1) throw std::invalid_argument("permutation degree must be >= 1");
    std::vector<int> img(static_cast<size_t>(n));
    std::iota(img.begin(), img.end(), 0);
    return Permutation(std::move(img));
}

Permutation Permutation::from_images(std::vector<int> images) {
    const int n = static_cast<int>(images.size());
    if (n < 1) throw std::invalid_argument("permutation degree must be >= 1");
    std::vector<char> seen(static_cast<size_t>(n), 0);
    for (int v : images) {
        if (v < 0 || v >= n) throw std::invalid_argument("image out of range");
        if (seen[static_cast<size_t>(v)]) throw std::invalid_argument("image array is not a bijection");
        seen[static_cast<size_t>(v)] = 1;
    }
    return Permutation(std::move(images));
}

Permutation Permutation::compose(const Permutation& rhs) const {
    if (degree() != rhs.degree()) throw std::invalid_argument("compose: degree mismatch");
    std::vector<int> img(img_.size());
    for (size_t i = 0; i < img_.size(); ++i)
        img[i] = img_[static_cast<size_t>(rhs.img_[i])];
    return Permutation(std::move(img));
}

Permutation Permutation::inverse() const {
    std::vector<int> img(img_.size());
    for (size_t i = 0; i < img_.size(); ++i)
        img[static_cast<size_t>(img_[i])] = static_cast<int>(i);
    return Permutation(std::move(img));
}

bool Permutation::is_identity() const {
    for (size_t i = 0; i < img_.size(); ++i)
        if (img_[i] != static_cast<int>(i)) return false;
    return true;
}

int Permutation::fix_count() const {
    int c = 0;
    for (size_t i = 0; i < img_.size(); ++i)
        if (img_[i] == static_cast<int>(i)) ++c;
    return c;
}

std::uint64_t Permutation::fix_k_count(int k) const {
    if (k < 1 || k > degree()) throw std::invalid_argument("fix_k_count: k out of range");
    const int f = fix_count();
    if (f < k) return 0;
    std::uint64_t r = 1;
    for (int i = 0; i < k; ++i) r *= static_cast<std::uint64_t>(f - i);
    return r;
}

bool Permutation::is_even() const {
    // parity = (n - number of cycles) mod 2, counting fixed points as cycles
    std::vector<char> seen(img_.size(), 0);
    int cycles = 0;
    for (size_t i = 0; i < img_.size(); ++i) {
        if (seen[i]) continue;
        ++cycles;
        size_t j = i;
        while (!seen[j]) {
            seen[j] = 1;
            j = static_cast<size_t>(img_[j]);
        }
    }
    return ((degree() - cycles) % 2) == 0;
}

bool Permutation::same_cycle(int i, int j) const {
    if (i < 0 || i >= degree() || j < 0 || j >= degree())
        throw std::invalid_argument("same_cycle: point out of range");
    if (i == j) return true;
    int k = img_[static_cast<size_t>(i)];
    while (k != i) {
        if (k == j) return true;
        k = img_[static_cast<size_t>(k)];
    }
    return false;
}

std::vector<std::vector<int>> Permutation::cycles() const {
    std::vector<char> seen(img_.size(), 0);
    std::vector<std::vector<int>> out;
    for (size_t i = 0; i < img_.size(); ++i) {
        if (seen[i] || img_[i] == static_cast<int>(i)) continue;
        std::vector<int> cyc;
        size_t j = i;
        while (!seen[j]) {
            seen[j] = 1;
            cyc.push_back(static_cast<int>(j));
            j = static_cast<size_t>(img_[j]);
        }
        out.push_back(std::move(cyc));
    }
    return out;
}

int Permutation::smallest_moved_point() const {
    for (size_t i = 0; i < img_.size(); ++i)
        if (img_[i] != static_cast<int>(i)) return static_cast<int>(i);
    return -1;
}

int pair_index(int n, int i, int j) {
    return i * (n - 1) + (j < i ? j : j - 1);
}

std::pair<int, int> pair_of_index(int n, int idx) {
    const int i = idx / (n - 1);
    int j = idx % (n - 1);
    if (j >= i) ++j;
    return {i, j};
}

Permutation Permutation::pair_lift() const {
    const int n = degree();
    if (n < 2) throw std::invalid_argument("pair_lift: degree must be >= 2");
    std::vector<int> img(static_cast<size_t>(n) * static_cast<size_t>(n - 1));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (i == j) continue;
            img[static_cast<size_t>(pair_index(n, i, j))] =
                pair_index(n, img_[static_cast<size_t>(i)], img_[static_cast<size_t>(j)]);
        }
    return Permutation::from_images(std::move(img));
}

namespace {

void skip_ws(const std::string& s, size_t& pos) {
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
}

int parse_point(const std::string& s, size_t& pos, int n) {
    skip_ws(s, pos);
    size_t start = pos;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
    if (pos == start) throw std::invalid_argument("expected a point in permutation text");
    const long v = std::stol(s.substr(start, pos - start));
    if (v < 1 || v > n) throw std::invalid_argument("point out of range 1..n");
    return static_cast<int>(v - 1);
}

}  // namespace

Permutation parse_permutation(const std::string& text, int n) {
    if (n < 1) throw std::invalid_argument("degree must be >= 1");
    size_t pos = 0;
    skip_ws(text, pos);

    if (pos < text.size() && text[pos] == '[') {
        ++pos;
        std::vector<int> img;
        skip_ws(text, pos);
        if (pos < text.size() && text[pos] == ']') {
            ++pos;
        } else {
            while (true) {
                img.push_back(parse_point(text, pos, n));
                skip_ws(text, pos);
                if (pos >= text.size()) throw std::invalid_argument("unterminated image list");
                if (text[pos] == ',') { ++pos; continue; }
                if (text[pos] == ']') { ++pos; break; }
                throw std::invalid_argument("malformed image list");
            }
        }
        skip_ws(text, pos);
        if (pos != text.size()) throw std::invalid_argument("trailing text after image list");
        if (static_cast<int>(img.size()) != n)
            throw std::invalid_argument("image list length does not match degree");
        return Permutation::from_images(std::move(img));
    }

    std::vector<int> img(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) img[static_cast<size_t>(i)] = i;
    std::vector<char> used(static_cast<size_t>(n), 0);
    while (pos < text.size()) {
        skip_ws(text, pos);
        if (pos >= text.size()) break;
        if (text[pos] != '(') throw std::invalid_argument("expected '(' in cycle notation");
        ++pos;
        std::vector<int> cyc;
        skip_ws(text, pos);
        if (pos < text.size() && text[pos] == ')') {
            ++pos;  // "()" is an identity factor
            continue;
        }
        while (true) {
            const int p = parse_point(text, pos, n);
            if (used[static_cast<size_t>(p)]) throw std::invalid_argument("repeated point in cycles");
            used[static_cast<size_t>(p)] = 1;
            cyc.push_back(p);
            skip_ws(text, pos);
            if (pos >= text.size()) throw std::invalid_argument("unterminated cycle");
            if (text[pos] == ',') { ++pos; continue; }
            if (text[pos] == ')') { ++pos; break; }
            throw std::invalid_argument("malformed cycle");
        }
        for (size_t i = 0; i < cyc.size(); ++i)
            img[static_cast<size_t>(cyc[i])] = cyc[(i + 1) % cyc.size()];
    }
    return Permutation::from_images(std::move(img));
}

std::string format_cycles(const Permutation& p) {
    const auto cycs = p.cycles();
    if (cycs.empty()) return "()";
    std::string out;
    for (const auto& c : cycs) {
        out += '(';
        for (size_t i = 0; i < c.size(); ++i) {
            if (i) out += ',';
            out += std::to_string(c[i] + 1);
        }
        out += ')';
    }
    return out;
}

}  // namespace grouprec
