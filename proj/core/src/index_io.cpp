#include "mrtop/index_io.hpp"

#include <array>
#include <bit>
#include <cstring>
#include <fstream>
#include <iterator>
#include <istream>
#include <ostream>
#include <string_view>

#include <json.hpp>

#include "mrtop/errors.hpp"

namespace mrtop {

namespace {

constexpr std::array<char, 4> kMagic{'K', 'P', 'L', 'Y'};

class Writer {
public:
    explicit Writer(std::ostream& out) : out_(out) {}

    void u32(std::uint32_t v) { put(v, 4); }
    void u64(std::uint64_t v) { put(v, 8); }
    void f64(double v) { put(std::bit_cast<std::uint64_t>(v), 8); }
    void bytes(std::string_view s) { out_.write(s.data(), static_cast<std::streamsize>(s.size())); }

    void vertex(const PolygonVertex& v) {
        f64(v.point.x);
        f64(v.point.y);
        u32(v.left_line);
        u32(v.right_line);
    }

private:
    void put(std::uint64_t v, int width) {
        char buf[8];
        for (int i = 0; i < width; ++i) {
            buf[i] = static_cast<char>((v >> (8 * i)) & 0xffu);
        }
        out_.write(buf, width);
    }

    std::ostream& out_;
};

class Reader {
public:
    explicit Reader(std::string data) : data_(std::move(data)) {}

    std::uint32_t u32() { return static_cast<std::uint32_t>(get(4)); }
    std::uint64_t u64() { return get(8); }
    double f64() { return std::bit_cast<double>(get(8)); }

    std::string bytes(std::size_t n) {
        need(n);
        std::string s = data_.substr(pos_, n);
        pos_ += n;
        return s;
    }

    PolygonVertex vertex() {
        PolygonVertex v;
        v.point.x = f64();
        v.point.y = f64();
        v.left_line = u32();
        v.right_line = u32();
        return v;
    }

    std::size_t remaining() const noexcept { return data_.size() - pos_; }

    void need(std::size_t n) const {
        if (remaining() < n) {
            throw IndexFormatError(IndexFormatError::Kind::truncated, "index stream is truncated");
        }
    }

private:
    std::uint64_t get(int width) {
        need(static_cast<std::size_t>(width));
        std::uint64_t v = 0;
        for (int i = 0; i < width; ++i) {
            v |= static_cast<std::uint64_t>(static_cast<unsigned char>(data_[pos_ + i])) << (8 * i);
        }
        pos_ += static_cast<std::size_t>(width);
        return v;
    }

    std::string data_;
    std::size_t pos_ = 0;
};

constexpr std::size_t kVertexBytes = 8 + 8 + 4 + 4;
constexpr std::size_t kMinLineBytes = 6 * 8 + 4;

}  // namespace

void serialize_index(const KPolygonIndex& index, std::ostream& out) {
    Writer w(out);
    w.bytes(std::string_view(kMagic.data(), kMagic.size()));
    w.u32(kIndexFormatVersion);
    w.u32(index.k);
    w.f64(index.tau);
    w.u64(index.hull.size());
    w.u64(index.vertex_count() - index.hull.size());
    w.u64(index.lines.size());
    for (const auto& v : index.hull) {
        w.vertex(v);
    }
    for (const auto& pocket : index.concavities) {
        w.u32(static_cast<std::uint32_t>(pocket.size()));
        for (const auto& v : pocket) {
            w.vertex(v);
        }
    }
    for (const auto& line : index.lines) {
        w.f64(line.slope);
        w.f64(line.y_intercept);
        w.f64(line.x_intercept);
        w.f64(line.a1);
        w.f64(line.a2);
        w.f64(line.tau);
        w.u32(static_cast<std::uint32_t>(line.source.size()));
        w.bytes(line.source);
    }
}

KPolygonIndex deserialize_index(std::istream& in) {
    Reader r{std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>{})};
    if (r.remaining() < kMagic.size()) {
        throw IndexFormatError(IndexFormatError::Kind::truncated, "index stream is truncated");
    }
    const std::string magic = r.bytes(kMagic.size());
    if (std::memcmp(magic.data(), kMagic.data(), kMagic.size()) != 0) {
        throw IndexFormatError(IndexFormatError::Kind::bad_magic, "not a k-polygon index");
    }
    const std::uint32_t version = r.u32();
    if (version != kIndexFormatVersion) {
        throw IndexFormatError(IndexFormatError::Kind::version_mismatch,
                               "index format version " + std::to_string(version) + ", expected " +
                                   std::to_string(kIndexFormatVersion));
    }
    KPolygonIndex index;
    index.k = r.u32();
    index.tau = r.f64();
    const std::uint64_t hull_count = r.u64();
    const std::uint64_t pocket_vertices = r.u64();
    const std::uint64_t line_count = r.u64();
    if (hull_count > r.remaining() / kVertexBytes || pocket_vertices > r.remaining() / kVertexBytes ||
        line_count > r.remaining() / kMinLineBytes) {
        throw IndexFormatError(IndexFormatError::Kind::truncated, "index counts exceed the stream length");
    }

    index.hull.reserve(hull_count);
    for (std::uint64_t i = 0; i < hull_count; ++i) {
        index.hull.push_back(r.vertex());
    }
    std::uint64_t seen = 0;
    if (hull_count > 0) {
        index.concavities.resize(hull_count - 1);
    }
    for (auto& pocket : index.concavities) {
        const std::uint32_t len = r.u32();
        r.need(static_cast<std::size_t>(len) * kVertexBytes);
        pocket.reserve(len);
        for (std::uint32_t j = 0; j < len; ++j) {
            pocket.push_back(r.vertex());
        }
        seen += len;
    }
    if (seen != pocket_vertices) {
        throw IndexFormatError(IndexFormatError::Kind::invariant_violation,
                               "concavity vertex count disagrees with the header");
    }
    index.lines.reserve(line_count);
    for (std::uint64_t i = 0; i < line_count; ++i) {
        DualLine line;
        line.slope = r.f64();
        line.y_intercept = r.f64();
        line.x_intercept = r.f64();
        line.a1 = r.f64();
        line.a2 = r.f64();
        line.tau = r.f64();
        line.source = r.bytes(r.u32());
        index.lines.push_back(std::move(line));
    }
    validate(index);
    return index;
}

void save_index(const KPolygonIndex& index, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw Error("cannot write '" + path + "'");
    }
    serialize_index(index, out);
    if (!out) {
        throw Error("failed writing '" + path + "'");
    }
}

KPolygonIndex load_index(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw Error("cannot open '" + path + "'");
    }
    return deserialize_index(in);
}

std::string export_json(const KPolygonIndex& index) {
    using nlohmann::json;
    auto vertex = [](const PolygonVertex& v) {
        json j{{"x", v.point.x}, {"y", v.point.y}, {"theta", v.theta()}};
        j["left_line"] = v.left_line == kAxisLine ? json("axis") : json(v.left_line);
        j["right_line"] = v.right_line == kAxisLine ? json("axis") : json(v.right_line);
        return j;
    };
    json doc;
    doc["format_version"] = kIndexFormatVersion;
    doc["k"] = index.k;
    doc["tau"] = index.tau;
    doc["hull"] = json::array();
    for (const auto& v : index.hull) {
        doc["hull"].push_back(vertex(v));
    }
    doc["concavities"] = json::array();
    for (const auto& pocket : index.concavities) {
        json list = json::array();
        for (const auto& v : pocket) {
            list.push_back(vertex(v));
        }
        doc["concavities"].push_back(std::move(list));
    }
    doc["lines"] = json::array();
    for (const auto& line : index.lines) {
        doc["lines"].push_back({{"id", line.source},
                                {"a1", line.a1},
                                {"a2", line.a2},
                                {"slope", line.slope},
                                {"y_intercept", line.y_intercept},
                                {"x_intercept", line.x_intercept}});
    }
    return doc.dump(2);
}

}  // namespace mrtop
