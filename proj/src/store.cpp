#include "coclust/store.hpp"

#include <cerrno>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>

#include "coclust/errors.hpp"

namespace coclust::store {

namespace {

constexpr std::string_view kLinksHeader = "coclust-links 1";

// Cursor over raw store bytes that tracks the 1-based line of the record
// being parsed, for CorruptStore diagnostics.
class Scanner {
public:
    explicit Scanner(std::string_view bytes) : bytes_(bytes) {}

    bool at_end() const { return pos_ >= bytes_.size(); }
    std::size_t line() const { return line_; }

    [[noreturn]] void fail(const std::string& what) const { throw CorruptStore(line_, what); }

    char peek() const {
        if (at_end()) fail("unexpected end of file");
        return bytes_[pos_];
    }

    void expect(char c) {
        if (peek() != c) fail(std::string("expected '") + c + "'");
        advance();
    }

    template <typename T>
    T parse_number() {
        std::size_t start = pos_;
        while (pos_ < bytes_.size() && bytes_[pos_] != ' ' && bytes_[pos_] != ':' &&
               bytes_[pos_] != '\n') {
            ++pos_;
        }
        T value{};
        auto [ptr, ec] =
            std::from_chars(bytes_.data() + start, bytes_.data() + pos_, value);
        if (ec != std::errc{} || ptr != bytes_.data() + pos_ || start == pos_) {
            fail("malformed number");
        }
        return value;
    }

    std::string take(std::size_t count) {
        if (pos_ + count > bytes_.size()) fail("field runs past end of file");
        std::string out(bytes_.substr(pos_, count));
        for (std::size_t i = 0; i < count; ++i) advance();
        return out;
    }

    void advance() {
        if (bytes_[pos_] == '\n') ++line_;
        ++pos_;
    }

private:
    std::string_view bytes_;
    std::size_t pos_ = 0;
    std::size_t line_ = 1;
};

void append_field(std::string& out, const std::string& field) {
    out += std::to_string(field.size());
    out += ':';
    out += field;
}

std::string format_double(double value) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", value);
    return buf;
}

}  // namespace

void atomic_write(const std::filesystem::path& path, const std::string& bytes) {
    std::filesystem::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw IoError("cannot open " + tmp.string() + " for writing");
        out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
        if (!out) throw IoError("short write to " + tmp.string());
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) throw IoError("cannot rename " + tmp.string() + " to " + path.string() + ": " +
                          ec.message());
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path.string());
    std::ostringstream buffer;
    buffer << in.rdbuf();
    if (in.bad()) throw IoError("read failure on " + path.string());
    return std::move(buffer).str();
}

void save_links(const std::filesystem::path& path, const search::SearchIndex& index) {
    search::IndexSnapshot snapshot = index.snapshot();
    std::string out(kLinksHeader);
    out += '\n';
    out += "counters " + std::to_string(snapshot.next_id) + ' ' +
           std::to_string(snapshot.next_seq) + '\n';
    for (const auto& record : snapshot.records) {
        out += std::to_string(record.id);
        out += ' ';
        out += std::to_string(record.registered_seq);
        out += ' ';
        out += std::to_string(record.last_visit_seq);
        out += ' ';
        out += std::to_string(record.visit_count);
        out += ' ';
        append_field(out, record.name);
        append_field(out, record.description);
        append_field(out, record.keywords);
        out += '\n';
    }
    atomic_write(path, out);
}

search::SearchIndex load_links(const std::filesystem::path& path, corpus::Stoplist stoplist) {
    std::string bytes = read_file(path);
    Scanner scan(bytes);

    for (char expected : kLinksHeader) {
        if (scan.at_end() || scan.peek() != expected) scan.fail("bad store header");
        scan.advance();
    }
    scan.expect('\n');

    for (char expected : std::string_view("counters ")) {
        if (scan.at_end() || scan.peek() != expected) scan.fail("missing counters line");
        scan.advance();
    }
    search::IndexSnapshot snapshot;
    snapshot.next_id = scan.parse_number<std::int64_t>();
    scan.expect(' ');
    snapshot.next_seq = scan.parse_number<std::uint64_t>();
    scan.expect('\n');

    while (!scan.at_end()) {
        search::LinkRecord record;
        record.id = scan.parse_number<std::int64_t>();
        scan.expect(' ');
        record.registered_seq = scan.parse_number<std::uint64_t>();
        scan.expect(' ');
        record.last_visit_seq = scan.parse_number<std::uint64_t>();
        scan.expect(' ');
        record.visit_count = scan.parse_number<std::uint64_t>();
        scan.expect(' ');
        std::size_t record_line = scan.line();
        for (std::string* field : {&record.name, &record.description, &record.keywords}) {
            auto len = scan.parse_number<std::size_t>();
            scan.expect(':');
            *field = scan.take(len);
        }
        scan.expect('\n');
        if (record.name.size() > search::kNameLimit ||
            record.description.size() > search::kDescriptionLimit ||
            record.keywords.size() > search::kKeywordsLimit) {
            throw LimitViolation("stored link " + std::to_string(record.id) + " at line " +
                                 std::to_string(record_line) + " exceeds a field limit");
        }
        snapshot.records.push_back(std::move(record));
    }
    return search::SearchIndex(std::move(snapshot), std::move(stoplist));
}

void save_matrix(const std::filesystem::path& path, const Matrix& matrix) {
    std::string out = std::to_string(matrix.rows()) + ',' + std::to_string(matrix.cols()) + '\n';
    for (std::size_t r = 0; r < matrix.rows(); ++r) {
        for (std::size_t c = 0; c < matrix.cols(); ++c) {
            if (c > 0) out += ',';
            out += format_double(matrix(r, c));
        }
        out += '\n';
    }
    atomic_write(path, out);
}

Matrix load_matrix(const std::filesystem::path& path) {
    std::string bytes = read_file(path);
    std::istringstream in(bytes);
    std::string line;
    if (!std::getline(in, line)) throw IoError("empty matrix file " + path.string());

    std::size_t rows = 0, cols = 0;
    if (std::sscanf(line.c_str(), "%zu,%zu", &rows, &cols) != 2 || rows == 0 || cols == 0) {
        throw DimensionMismatch("bad matrix header \"" + line + "\" in " + path.string());
    }
    Matrix matrix(rows, cols);
    for (std::size_t r = 0; r < rows; ++r) {
        if (!std::getline(in, line)) {
            throw DimensionMismatch("matrix " + path.string() + " ends after " +
                                    std::to_string(r) + " of " + std::to_string(rows) + " rows");
        }
        const char* cursor = line.c_str();
        for (std::size_t c = 0; c < cols; ++c) {
            char* end = nullptr;
            errno = 0;
            double value = std::strtod(cursor, &end);
            if (end == cursor || errno == ERANGE) {
                throw DimensionMismatch("bad value in row " + std::to_string(r) + " of " +
                                        path.string());
            }
            if (!std::isfinite(value)) {
                throw NonFinite("non-finite value in row " + std::to_string(r) + " of " +
                                path.string());
            }
            if (value < 0.0) {
                throw InvalidArgument("negative value in row " + std::to_string(r) + " of " +
                                      path.string());
            }
            matrix(r, c) = value;
            cursor = end;
            if (c + 1 < cols) {
                if (*cursor != ',') {
                    throw DimensionMismatch("row " + std::to_string(r) + " of " + path.string() +
                                            " has fewer than " + std::to_string(cols) +
                                            " columns");
                }
                ++cursor;
            }
        }
        while (*cursor == ' ' || *cursor == '\r') ++cursor;
        if (*cursor != '\0') {
            throw DimensionMismatch("row " + std::to_string(r) + " of " + path.string() +
                                    " has more than " + std::to_string(cols) + " columns");
        }
    }
    std::string extra;
    while (std::getline(in, extra)) {
        if (!extra.empty() && extra != "\r") {
            throw DimensionMismatch("matrix " + path.string() + " has more than " +
                                    std::to_string(rows) + " rows");
        }
    }
    return matrix;
}

}  // namespace coclust::store
