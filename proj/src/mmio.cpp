#include "gddkit/mmio.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <vector>

namespace gddkit {

namespace {

enum class Field { real, integer, complex };
enum class Symmetry { general, symmetric, hermitian, skew };

[[noreturn]] void fail(std::size_t line, const std::string& what) {
    throw Error(ErrorCode::parse_error, "line " + std::to_string(line) + ": " + what);
}

std::string lower(std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return out;
}

std::vector<std::string_view> tokens(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t p = 0;
    while (p < line.size()) {
        while (p < line.size() && std::isspace(static_cast<unsigned char>(line[p]))) ++p;
        if (p >= line.size()) break;
        std::size_t q = p;
        while (q < line.size() && !std::isspace(static_cast<unsigned char>(line[q]))) ++q;
        out.push_back(line.substr(p, q - p));
        p = q;
    }
    return out;
}

double to_double(std::string_view tok, std::size_t line) {
    double v = 0.0;
    const char* b = tok.data();
    const char* e = tok.data() + tok.size();
    if (b != e && *b == '+') ++b;
    const auto [ptr, ec] = std::from_chars(b, e, v);
    if (ec != std::errc() || ptr != e) fail(line, "bad number '" + std::string(tok) + "'");
    if (!std::isfinite(v)) fail(line, "non-finite value '" + std::string(tok) + "'");
    return v;
}

std::size_t to_index(std::string_view tok, std::size_t line) {
    std::size_t v = 0;
    const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc() || ptr != tok.data() + tok.size()) fail(line, "bad integer '" + std::string(tok) + "'");
    return v;
}

struct Lines {
    std::string_view text;
    std::size_t pos = 0;
    std::size_t number = 0;

    // Next line that is neither blank nor a comment.
    bool next(std::string_view& out) {
        while (pos < text.size()) {
            const std::size_t end = std::min(text.find('\n', pos), text.size());
            std::string_view line = text.substr(pos, end - pos);
            pos = end + 1;
            ++number;
            if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
            if (line.empty() || line.front() == '%') continue;
            if (tokens(line).empty()) continue;
            out = line;
            return true;
        }
        return false;
    }
};

}  // namespace

ComplexMatrix parse_matrix_market(std::string_view text) {
    Lines lines{text};
    // Header is the first physical line.
    const std::size_t end = std::min(text.find('\n'), text.size());
    std::string_view header = text.substr(0, end);
    if (!header.empty() && header.back() == '\r') header.remove_suffix(1);
    lines.pos = end + 1;
    lines.number = 1;
    const auto head = tokens(header);
    if (head.size() != 5 || lower(head[0]) != "%%matrixmarket") fail(1, "missing '%%MatrixMarket' header");
    if (lower(head[1]) != "matrix") fail(1, "object must be 'matrix'");
    const std::string layout = lower(head[2]), field_s = lower(head[3]), sym_s = lower(head[4]);
    if (layout != "coordinate" && layout != "array") fail(1, "format must be 'coordinate' or 'array'");
    Field field;
    if (field_s == "real") field = Field::real;
    else if (field_s == "integer") field = Field::integer;
    else if (field_s == "complex") field = Field::complex;
    else if (field_s == "pattern") fail(1, "field 'pattern' is not supported (entries carry no magnitudes)");
    else fail(1, "unknown field '" + field_s + "'");
    Symmetry sym;
    if (sym_s == "general") sym = Symmetry::general;
    else if (sym_s == "symmetric") sym = Symmetry::symmetric;
    else if (sym_s == "hermitian") sym = Symmetry::hermitian;
    else if (sym_s == "skew-symmetric") sym = Symmetry::skew;
    else fail(1, "unknown symmetry '" + sym_s + "'");
    if (sym == Symmetry::hermitian && field != Field::complex) fail(1, "hermitian storage needs a complex field");

    std::string_view line;
    if (!lines.next(line)) fail(lines.number, "missing size line");
    const auto size = tokens(line);
    const bool coord = layout == "coordinate";
    if (size.size() != (coord ? 3u : 2u)) fail(lines.number, coord ? "size line must be 'rows cols entries'" : "size line must be 'rows cols'");
    const std::size_t rows = to_index(size[0], lines.number), cols = to_index(size[1], lines.number);
    if (rows != cols) fail(lines.number, "matrix is not square (" + std::to_string(rows) + "x" + std::to_string(cols) + ")");
    if (rows == 0) fail(lines.number, "matrix order must be positive");
    const std::size_t n = rows;
    std::vector<cplx> a(n * n, 0.0);
    const std::size_t width = field == Field::complex ? 2 : 1;

    auto read_value = [&](const std::vector<std::string_view>& t, std::size_t off) {
        const double re = to_double(t[off], lines.number);
        const double im = field == Field::complex ? to_double(t[off + 1], lines.number) : 0.0;
        if (field == Field::integer && re != std::trunc(re)) fail(lines.number, "integer field holds a non-integer value");
        return cplx(re, im);
    };
    auto place = [&](std::size_t i, std::size_t j, cplx v) {
        if (sym != Symmetry::general) {
            if (i < j) fail(lines.number, "entry above the diagonal in a " + sym_s + " file");
            if (i == j && sym == Symmetry::skew && v != cplx(0.0)) fail(lines.number, "nonzero diagonal in a skew-symmetric file");
            if (i == j && sym == Symmetry::hermitian && v.imag() != 0.0) fail(lines.number, "non-real diagonal in a hermitian file");
        }
        a[i * n + j] += v;
        if (i != j) {
            switch (sym) {
                case Symmetry::symmetric: a[j * n + i] += v; break;
                case Symmetry::hermitian: a[j * n + i] += std::conj(v); break;
                case Symmetry::skew: a[j * n + i] -= v; break;
                default: break;
            }
        }
    };

    if (coord) {
        const std::size_t nnz = to_index(size[2], lines.number);
        for (std::size_t t = 0; t < nnz; ++t) {
            if (!lines.next(line)) fail(lines.number, "expected " + std::to_string(nnz) + " entries, found " + std::to_string(t));
            const auto tok = tokens(line);
            if (tok.size() != 2 + width) fail(lines.number, "entry must have " + std::to_string(2 + width) + " fields");
            const std::size_t i = to_index(tok[0], lines.number), j = to_index(tok[1], lines.number);
            if (i < 1 || i > n || j < 1 || j > n)
                fail(lines.number, "index (" + std::to_string(i) + "," + std::to_string(j) + ") out of range 1.." + std::to_string(n));
            place(i - 1, j - 1, read_value(tok, 2));
        }
    } else {
        // Column-major; symmetric layouts store the lower triangle only.
        std::vector<std::pair<std::size_t, std::size_t>> slots;
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t i = 0; i < n; ++i) {
                if (sym == Symmetry::general || i > j || (i == j && sym != Symmetry::skew)) slots.emplace_back(i, j);
            }
        std::size_t t = 0;
        while (t < slots.size()) {
            if (!lines.next(line)) fail(lines.number, "expected " + std::to_string(slots.size()) + " values, found " + std::to_string(t));
            const auto tok = tokens(line);
            if (tok.size() != width) fail(lines.number, "array entry must have " + std::to_string(width) + " field(s)");
            place(slots[t].first, slots[t].second, read_value(tok, 0));
            ++t;
        }
    }
    if (lines.next(line)) fail(lines.number, "unexpected data after the last entry");
    return ComplexMatrix(n, std::move(a));
}

ComplexMatrix load_matrix_market(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::io_error, "cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_matrix_market(ss.str());
}

std::string to_matrix_market(const ComplexMatrix& a) {
    const std::size_t n = a.order();
    const bool real = a.is_real();
    std::string out = real ? "%%MatrixMarket matrix array real general\n" : "%%MatrixMarket matrix array complex general\n";
    out += std::to_string(n) + " " + std::to_string(n) + "\n";
    char buf[64];
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t i = 0; i < n; ++i) {
            const cplx v = a(i, j);
            if (real) std::snprintf(buf, sizeof buf, "%.17g\n", v.real());
            else std::snprintf(buf, sizeof buf, "%.17g %.17g\n", v.real(), v.imag());
            out += buf;
        }
    return out;
}

}  // namespace gddkit
