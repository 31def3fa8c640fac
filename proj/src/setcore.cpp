#include "invpack/setcore.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "invpack/errors.hpp"

namespace invpack {

namespace {

std::size_t word_count(std::size_t n) { return (n + Subset::word_bits - 1) / Subset::word_bits; }

Subset::word_type tail_mask(std::size_t n) {
    const std::size_t r = n % Subset::word_bits;
    return r == 0 ? ~Subset::word_type{0} : (Subset::word_type{1} << r) - 1;
}

}  // namespace

// ---------------------------------------------------------------------------
// Subset
// ---------------------------------------------------------------------------

Subset::Subset(std::size_t n) : n_(n), words_(word_count(n), 0) {}

Subset::Subset(std::size_t n, std::initializer_list<std::size_t> elements) : Subset(n) {
    for (auto x : elements) insert(x);
}

Subset Subset::from_elements(std::size_t n, std::span<const std::size_t> elements) {
    Subset s(n);
    for (auto x : elements) s.insert(x);
    return s;
}

Subset Subset::full(std::size_t n) {
    Subset s(n);
    std::fill(s.words_.begin(), s.words_.end(), ~word_type{0});
    if (!s.words_.empty()) s.words_.back() &= tail_mask(n);
    return s;
}

std::size_t Subset::cardinality() const noexcept {
    std::size_t c = 0;
    for (auto w : words_) c += static_cast<std::size_t>(std::popcount(w));
    return c;
}

bool Subset::empty() const noexcept {
    return std::all_of(words_.begin(), words_.end(), [](word_type w) { return w == 0; });
}

void Subset::insert(std::size_t x) {
    if (x >= n_) throw std::out_of_range("element " + std::to_string(x) + " outside ground set of size " + std::to_string(n_));
    words_[x / word_bits] |= word_type{1} << (x % word_bits);
}

void Subset::erase(std::size_t x) {
    if (x >= n_) throw std::out_of_range("element " + std::to_string(x) + " outside ground set of size " + std::to_string(n_));
    words_[x / word_bits] &= ~(word_type{1} << (x % word_bits));
}

Subset Subset::complement() const {
    Subset r(n_);
    for (std::size_t w = 0; w < words_.size(); ++w) r.words_[w] = ~words_[w];
    if (!r.words_.empty()) r.words_.back() &= tail_mask(n_);
    return r;
}

void Subset::check_same_ground(const Subset& other) const {
    if (n_ != other.n_) {
        throw std::invalid_argument("subset ground sizes differ: " + std::to_string(n_) + " vs " + std::to_string(other.n_));
    }
}

bool Subset::intersects(const Subset& other) const {
    check_same_ground(other);
    for (std::size_t w = 0; w < words_.size(); ++w) {
        if ((words_[w] & other.words_[w]) != 0) return true;
    }
    return false;
}

std::size_t Subset::intersection_size(const Subset& other) const {
    check_same_ground(other);
    std::size_t c = 0;
    for (std::size_t w = 0; w < words_.size(); ++w) {
        c += static_cast<std::size_t>(std::popcount(words_[w] & other.words_[w]));
    }
    return c;
}

bool Subset::is_subset_of(const Subset& other) const {
    check_same_ground(other);
    for (std::size_t w = 0; w < words_.size(); ++w) {
        if ((words_[w] & ~other.words_[w]) != 0) return false;
    }
    return true;
}

Subset& Subset::operator&=(const Subset& other) {
    check_same_ground(other);
    for (std::size_t w = 0; w < words_.size(); ++w) words_[w] &= other.words_[w];
    return *this;
}

Subset& Subset::operator|=(const Subset& other) {
    check_same_ground(other);
    for (std::size_t w = 0; w < words_.size(); ++w) words_[w] |= other.words_[w];
    return *this;
}

Subset& Subset::operator-=(const Subset& other) {
    check_same_ground(other);
    for (std::size_t w = 0; w < words_.size(); ++w) words_[w] &= ~other.words_[w];
    return *this;
}

std::size_t Subset::find_next(std::size_t from) const noexcept {
    if (from >= n_) return npos;
    std::size_t w = from / word_bits;
    word_type bits = words_[w] & (~word_type{0} << (from % word_bits));
    while (true) {
        if (bits != 0) return w * word_bits + static_cast<std::size_t>(std::countr_zero(bits));
        if (++w == words_.size()) return npos;
        bits = words_[w];
    }
}

std::vector<std::size_t> Subset::elements() const {
    std::vector<std::size_t> out;
    out.reserve(cardinality());
    for_each([&](std::size_t x) { out.push_back(x); });
    return out;
}

std::strong_ordering lex_compare(const Subset& a, const Subset& b) {
    std::size_t x = a.find_first();
    std::size_t y = b.find_first();
    while (x != npos && y != npos) {
        if (x != y) return x <=> y;
        x = a.find_next(x + 1);
        y = b.find_next(y + 1);
    }
    if (x != y) return x == npos ? std::strong_ordering::less : std::strong_ordering::greater;
    return a.ground_size() <=> b.ground_size();
}

// ---------------------------------------------------------------------------
// Permutation
// ---------------------------------------------------------------------------

Permutation::Permutation(std::vector<std::size_t> image) : image_(std::move(image)) {
    const std::size_t n = image_.size();
    std::vector<bool> seen(n, false);
    for (auto y : image_) {
        if (y >= n || seen[y]) throw std::invalid_argument("permutation image is not a bijection");
        seen[y] = true;
    }
    std::size_t transpositions = 0;
    std::size_t fixed = 0;
    bool involution = true;
    for (std::size_t j = 0; j < n; ++j) {
        if (image_[image_[j]] != j) involution = false;
        if (image_[j] == j) ++fixed;
        else if (image_[j] > j) ++transpositions;
    }
    simple_ = involution && transpositions == n / 2 && fixed == n % 2;
}

Permutation Permutation::identity(std::size_t n) {
    std::vector<std::size_t> img(n);
    for (std::size_t j = 0; j < n; ++j) img[j] = j;
    return Permutation(std::move(img));
}

Permutation Permutation::transposition(std::size_t n, std::size_t a, std::size_t b) {
    const std::pair<std::size_t, std::size_t> p{a, b};
    return from_pairs(n, std::span(&p, 1));
}

Permutation Permutation::from_pairs(std::size_t n,
                                    std::span<const std::pair<std::size_t, std::size_t>> pairs) {
    std::vector<std::size_t> img(n);
    for (std::size_t j = 0; j < n; ++j) img[j] = j;
    std::vector<bool> used(n, false);
    for (auto [a, b] : pairs) {
        if (a >= n || b >= n || a == b || used[a] || used[b]) {
            throw std::invalid_argument("pairs must be disjoint 2-cycles inside [0, n)");
        }
        used[a] = used[b] = true;
        img[a] = b;
        img[b] = a;
    }
    return Permutation(std::move(img));
}

Permutation Permutation::inverse() const {
    std::vector<std::size_t> inv(image_.size());
    for (std::size_t j = 0; j < image_.size(); ++j) inv[image_[j]] = j;
    return Permutation(std::move(inv));
}

// ---------------------------------------------------------------------------
// Collection
// ---------------------------------------------------------------------------

Collection::Collection(std::size_t n, std::vector<Subset> sets) : n_(n), sets_(std::move(sets)) {
    for (const auto& s : sets_) {
        if (s.ground_size() != n_) throw std::invalid_argument("collection member has wrong ground size");
    }
}

void Collection::push_back(Subset s) {
    if (s.ground_size() != n_) throw std::invalid_argument("collection member has wrong ground size");
    sets_.push_back(std::move(s));
}

// ---------------------------------------------------------------------------
// Set operations
// ---------------------------------------------------------------------------

Subset complement(const Subset& s) { return s.complement(); }

Subset apply(const Permutation& p, const Subset& s) {
    if (p.size() != s.ground_size()) throw std::invalid_argument("permutation and subset sizes differ");
    Subset out(s.ground_size());
    s.for_each([&](std::size_t x) { out.insert(p[x]); });
    return out;
}

bool inverts(const Permutation& p, const Subset& s) {
    if (p.size() != s.ground_size()) throw std::invalid_argument("permutation and subset sizes differ");
    for (std::size_t x = s.find_first(); x != npos; x = s.find_next(x + 1)) {
        if (s.contains(p[x])) return false;
    }
    return true;
}

bool inverts_all(const Permutation& p, const Collection& c) {
    return std::all_of(c.begin(), c.end(), [&](const Subset& s) { return inverts(p, s); });
}

std::size_t count_inverted(const Permutation& p, const Collection& c) {
    return static_cast<std::size_t>(
        std::count_if(c.begin(), c.end(), [&](const Subset& s) { return inverts(p, s); }));
}

// ---------------------------------------------------------------------------
// Text formats
// ---------------------------------------------------------------------------

namespace {

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

std::vector<std::size_t> parse_indices(std::string_view line, std::size_t line_no) {
    std::vector<std::size_t> out;
    std::size_t pos = 0;
    while (pos < line.size()) {
        while (pos < line.size() && (line[pos] == ' ' || line[pos] == '\t')) ++pos;
        if (pos == line.size()) break;
        std::size_t end = pos;
        while (end < line.size() && line[end] != ' ' && line[end] != '\t') ++end;
        const std::string_view tok = line.substr(pos, end - pos);
        std::size_t value = 0;
        const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
        if (ec != std::errc{} || ptr != tok.data() + tok.size()) {
            throw FormatError("line " + std::to_string(line_no) + ": not a non-negative integer: '" + std::string(tok) + "'");
        }
        out.push_back(value);
        pos = end;
    }
    return out;
}

// Splits on '\n'; a single trailing newline does not produce an extra line.
std::vector<std::string_view> split_lines(std::string_view text) {
    std::vector<std::string_view> lines;
    std::size_t start = 0;
    while (start < text.size()) {
        auto nl = text.find('\n', start);
        if (nl == std::string_view::npos) nl = text.size();
        lines.push_back(text.substr(start, nl - start));
        start = nl + 1;
    }
    return lines;
}

}  // namespace

Collection parse_collection(std::string_view text) {
    const auto lines = split_lines(text);
    bool have_header = false;
    Collection out;
    for (std::size_t i = 0; i < lines.size(); ++i) {
        const std::size_t line_no = i + 1;
        const auto line = trim(lines[i]);
        if (!line.empty() && line.front() == '#') continue;
        if (line.empty()) {
            throw FormatError("line " + std::to_string(line_no) + ": blank lines are not allowed (omit empty sets)");
        }
        auto values = parse_indices(line, line_no);
        if (!have_header) {
            if (values.size() != 1) throw FormatError("line " + std::to_string(line_no) + ": header must be the single integer n");
            out = Collection(values.front());
            have_header = true;
            continue;
        }
        const std::size_t n = out.ground_size();
        std::sort(values.begin(), values.end());
        for (std::size_t j = 0; j < values.size(); ++j) {
            if (values[j] >= n) {
                throw FormatError("line " + std::to_string(line_no) + ": element " + std::to_string(values[j]) + " >= n = " + std::to_string(n));
            }
            if (j > 0 && values[j] == values[j - 1]) {
                throw FormatError("line " + std::to_string(line_no) + ": duplicate element " + std::to_string(values[j]));
            }
        }
        out.push_back(Subset::from_elements(n, values));
    }
    if (!have_header) throw FormatError("missing header line with ground-set size n");
    return out;
}

Collection read_collection_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw FormatError("cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_collection(buf.str());
}

std::string format_set(const Subset& s) {
    std::string out;
    s.for_each([&](std::size_t x) {
        if (!out.empty()) out += ' ';
        out += std::to_string(x);
    });
    return out;
}

std::string serialize_collection(const Collection& c) {
    std::string out = std::to_string(c.ground_size()) + "\n";
    for (const auto& s : c) {
        if (s.empty()) throw std::invalid_argument("empty sets have no representation in the collection format");
        out += format_set(s);
        out += '\n';
    }
    return out;
}

Permutation parse_permutation(std::string_view text) {
    std::vector<std::size_t> image;
    bool seen = false;
    const auto lines = split_lines(text);
    for (std::size_t i = 0; i < lines.size(); ++i) {
        const auto line = trim(lines[i]);
        if (line.empty() || line.front() == '#') continue;
        if (seen) throw FormatError("line " + std::to_string(i + 1) + ": permutation file holds a single line");
        image = parse_indices(line, i + 1);
        seen = true;
    }
    if (!seen) throw FormatError("missing permutation line");
    try {
        return Permutation(std::move(image));
    } catch (const std::invalid_argument& e) {
        throw FormatError(e.what());
    }
}

std::string serialize_permutation(const Permutation& p) {
    std::string out;
    for (std::size_t j = 0; j < p.size(); ++j) {
        if (j > 0) out += ' ';
        out += std::to_string(p[j]);
    }
    return out;
}

std::ostream& operator<<(std::ostream& os, const Subset& s) { return os << '{' << format_set(s) << '}'; }

std::ostream& operator<<(std::ostream& os, const Permutation& p) { return os << serialize_permutation(p); }

}  // namespace invpack
