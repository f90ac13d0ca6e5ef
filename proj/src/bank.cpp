#include "voroshot/bank.hpp"

#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <limits>
#include <sstream>

#include "voroshot/error.hpp"

namespace voroshot {

namespace {

constexpr char kTextMagic[] = "VOROBANK1";
constexpr char kBinaryMagic[4] = {'V', 'B', 'N', 'K'};
constexpr uint16_t kBinaryVersion = 1;

[[noreturn]] void parse_fail(const std::string& path, size_t line, const std::string& what) {
    throw DataError(path + ":" + std::to_string(line) + ": " + what);
}

void put_u16(std::string& out, uint16_t v) {
    out.push_back(static_cast<char>(v & 0xFF));
    out.push_back(static_cast<char>((v >> 8) & 0xFF));
}

void put_u32(std::string& out, uint32_t v) {
    for (int i = 0; i < 4; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xFF));
}

void put_f32(std::string& out, float v) {
    uint32_t bits;
    std::memcpy(&bits, &v, 4);
    put_u32(out, bits);
}

// Cursor over a fully read binary payload; truncation errors report the
// expected vs. actual byte counts.
struct BinReader {
    const std::string& buf;
    const std::string& path;
    size_t pos = 0;

    void need(size_t n, const char* what) const {
        if (pos + n > buf.size()) {
            throw DataError(path + ": truncated while reading " + what + ": need " +
                            std::to_string(pos + n) + " bytes, file has " +
                            std::to_string(buf.size()));
        }
    }
    uint16_t u16(const char* what) {
        need(2, what);
        uint16_t v = static_cast<uint8_t>(buf[pos]) |
                     (static_cast<uint16_t>(static_cast<uint8_t>(buf[pos + 1])) << 8);
        pos += 2;
        return v;
    }
    uint32_t u32(const char* what) {
        need(4, what);
        uint32_t v = 0;
        for (int i = 0; i < 4; ++i)
            v |= static_cast<uint32_t>(static_cast<uint8_t>(buf[pos + i])) << (8 * i);
        pos += 4;
        return v;
    }
    uint8_t u8(const char* what) {
        need(1, what);
        return static_cast<uint8_t>(buf[pos++]);
    }
    float f32(const char* what) {
        uint32_t bits = u32(what);
        float v;
        std::memcpy(&v, &bits, 4);
        return v;
    }
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError(path + ": cannot open for reading");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& body) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw DataError(path + ": cannot open for writing");
    out.write(body.data(), static_cast<std::streamsize>(body.size()));
    if (!out) throw DataError(path + ": write failed");
}

FeatureBank load_text(const std::string& body, const std::string& path) {
    std::istringstream in(body);
    std::string line;
    size_t lineno = 0;

    if (!std::getline(in, line)) parse_fail(path, 1, "empty file");
    ++lineno;
    std::istringstream header(line);
    std::string magic, split_str;
    uint32_t n_samples, n_dims, n_views, n_classes;
    if (!(header >> magic >> n_samples >> n_dims >> n_views >> n_classes >> split_str) ||
        magic != kTextMagic) {
        parse_fail(path, lineno, "bad header, expected 'VOROBANK1 <n_samples> <n_dims> <n_views> <n_classes> <split>'");
    }

    FeatureBank bank;
    bank.n_samples = n_samples;
    bank.n_dims = n_dims;
    bank.n_classes = n_classes;
    bank.split = split_from_name(split_str);

    for (uint32_t v = 0; v < n_views; ++v) {
        if (!std::getline(in, line)) parse_fail(path, lineno + 1, "missing view descriptor line");
        ++lineno;
        std::istringstream vs(line);
        std::string kw;
        uint32_t id;
        if (!(vs >> kw >> id) || kw != "view" || id != v) {
            parse_fail(path, lineno, "expected 'view " + std::to_string(v) + " <provenance>'");
        }
        std::string prov;
        std::getline(vs, prov);
        size_t start = prov.find_first_not_of(' ');
        bank.view_provenance.push_back(start == std::string::npos ? "" : prov.substr(start));
    }

    bank.labels.assign(n_samples, 0);
    bank.features.assign(n_views, std::vector<float>(static_cast<size_t>(n_samples) * n_dims));
    for (uint32_t v = 0; v < n_views; ++v) {
        for (uint32_t s = 0; s < n_samples; ++s) {
            if (!std::getline(in, line)) parse_fail(path, lineno + 1, "missing sample row");
            ++lineno;
            std::istringstream row(line);
            uint32_t label;
            if (!(row >> label)) parse_fail(path, lineno, "bad label");
            if (v == 0) {
                bank.labels[s] = label;
            } else if (bank.labels[s] != label) {
                parse_fail(path, lineno, "label disagrees with view 0 for sample " + std::to_string(s));
            }
            for (uint32_t d = 0; d < n_dims; ++d) {
                float value;
                if (!(row >> value)) {
                    parse_fail(path, lineno, "expected " + std::to_string(n_dims) +
                                             " values, row ended at " + std::to_string(d));
                }
                bank.features[v][static_cast<size_t>(s) * n_dims + d] = value;
            }
        }
    }
    return bank;
}

FeatureBank load_binary(const std::string& body, const std::string& path) {
    BinReader r{body, path};
    r.need(4, "magic");
    if (std::memcmp(body.data(), kBinaryMagic, 4) != 0) {
        throw DataError(path + ": bad magic, not a binary bank file");
    }
    r.pos = 4;
    uint16_t version = r.u16("version");
    if (version != kBinaryVersion) {
        throw DataError(path + ": unsupported version " + std::to_string(version));
    }
    FeatureBank bank;
    bank.n_samples = r.u32("n_samples");
    bank.n_dims = r.u32("n_dims");
    uint32_t n_views = r.u32("n_views");
    bank.n_classes = r.u32("n_classes");
    uint8_t split_tag = r.u8("split tag");
    if (split_tag > 2) throw DataError(path + ": invalid split tag " + std::to_string(split_tag));
    bank.split = static_cast<Split>(split_tag);

    for (uint32_t v = 0; v < n_views; ++v) {
        uint32_t len = r.u32("view descriptor length");
        r.need(len, "view descriptor");
        bank.view_provenance.emplace_back(body.data() + r.pos, len);
        r.pos += len;
    }

    bank.labels.resize(bank.n_samples);
    for (uint32_t s = 0; s < bank.n_samples; ++s) bank.labels[s] = r.u32("label array");

    size_t per_view = static_cast<size_t>(bank.n_samples) * bank.n_dims;
    bank.features.assign(n_views, std::vector<float>(per_view));
    for (uint32_t v = 0; v < n_views; ++v) {
        r.need(per_view * 4, "feature matrix");
        // Little-endian f32; bulk copy on little-endian hosts would also work,
        // but the scalar path keeps the reader byte-order independent.
        for (size_t i = 0; i < per_view; ++i) {
            bank.features[v][i] = r.f32("feature matrix");
        }
    }
    if (r.pos != body.size()) {
        throw DataError(path + ": trailing bytes: expected " + std::to_string(r.pos) +
                        " bytes, file has " + std::to_string(body.size()));
    }
    return bank;
}

} // namespace

const char* split_name(Split s) {
    switch (s) {
        case Split::Base: return "base";
        case Split::Novel: return "novel";
        case Split::Validation: return "validation";
    }
    return "base";
}

Split split_from_name(const std::string& name) {
    if (name == "base") return Split::Base;
    if (name == "novel") return Split::Novel;
    if (name == "validation") return Split::Validation;
    throw DataError("unknown split '" + name + "', expected base|novel|validation");
}

std::vector<std::vector<uint32_t>> FeatureBank::samples_by_class() const {
    std::vector<std::vector<uint32_t>> groups(n_classes);
    for (uint32_t s = 0; s < n_samples; ++s) groups[labels[s]].push_back(s);
    return groups;
}

void FeatureBank::validate() const {
    if (n_dims == 0) throw DataError("bank invariant: dimension must be positive");
    if (n_classes == 0) throw DataError("bank invariant: class count must be positive");
    if (features.empty()) throw DataError("bank invariant: at least one view required");
    if (view_provenance.size() != features.size()) {
        throw DataError("bank invariant: view descriptor count does not match view count");
    }
    if (labels.size() != n_samples) {
        throw DataError("bank invariant: label count " + std::to_string(labels.size()) +
                        " does not match sample count " + std::to_string(n_samples));
    }
    size_t per_view = static_cast<size_t>(n_samples) * n_dims;
    for (size_t v = 0; v < features.size(); ++v) {
        if (features[v].size() != per_view) {
            throw DataError("bank invariant: view " + std::to_string(v) + " has " +
                            std::to_string(features[v].size()) + " values, expected " +
                            std::to_string(per_view));
        }
        for (size_t i = 0; i < per_view; ++i) {
            if (!std::isfinite(features[v][i])) {
                throw DataError("bank invariant: nonfinite feature in view " +
                                std::to_string(v) + " at offset " + std::to_string(i));
            }
        }
    }
    for (uint32_t s = 0; s < n_samples; ++s) {
        if (labels[s] >= n_classes) {
            throw DataError("bank invariant: label " + std::to_string(labels[s]) +
                            " out of range for sample " + std::to_string(s));
        }
    }
}

FeatureBank load_bank(const std::string& path) {
    std::string body = read_file(path);
    FeatureBank bank;
    if (body.size() >= 4 && std::memcmp(body.data(), kBinaryMagic, 4) == 0) {
        bank = load_binary(body, path);
    } else {
        bank = load_text(body, path);
    }
    bank.validate();
    return bank;
}

void save_bank(const FeatureBank& bank, const std::string& path, BankFormat format) {
    bank.validate();
    std::string out;
    if (format == BankFormat::Text) {
        char buf[64];
        out += kTextMagic;
        std::snprintf(buf, sizeof buf, " %u %u %u %u %s\n", bank.n_samples, bank.n_dims,
                      bank.n_views(), bank.n_classes, split_name(bank.split));
        out += buf;
        for (uint32_t v = 0; v < bank.n_views(); ++v) {
            out += "view " + std::to_string(v) + " " + bank.view_provenance[v] + "\n";
        }
        for (uint32_t v = 0; v < bank.n_views(); ++v) {
            for (uint32_t s = 0; s < bank.n_samples; ++s) {
                out += std::to_string(bank.labels[s]);
                for (uint32_t d = 0; d < bank.n_dims; ++d) {
                    std::snprintf(buf, sizeof buf, " %.9g",
                                  bank.features[v][static_cast<size_t>(s) * bank.n_dims + d]);
                    out += buf;
                }
                out += "\n";
            }
        }
    } else {
        out.append(kBinaryMagic, 4);
        put_u16(out, kBinaryVersion);
        put_u32(out, bank.n_samples);
        put_u32(out, bank.n_dims);
        put_u32(out, bank.n_views());
        put_u32(out, bank.n_classes);
        out.push_back(static_cast<char>(bank.split));
        for (const auto& prov : bank.view_provenance) {
            put_u32(out, static_cast<uint32_t>(prov.size()));
            out += prov;
        }
        for (uint32_t label : bank.labels) put_u32(out, label);
        for (const auto& view : bank.features) {
            for (float v : view) put_f32(out, v);
        }
    }
    write_file(path, out);
}

} // namespace voroshot
