// Copyright 2026 The bcdist Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "bcdist/cache.h"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <numeric>
#include <sstream>

#include "json.hpp"

#include "bcdist/errors.h"
#include "bcdist/subgroups.h"

namespace bcd {

namespace {

constexpr char kCacheMagic[4] = {'B', 'C', 'D', 'C'};
constexpr char kJournalMagic[4] = {'B', 'C', 'D', 'J'};

struct Writer {
    std::string buf;
    template <typename T>
    void put(T v) {
        for (size_t i = 0; i < sizeof(T); i++) buf.push_back(static_cast<char>((static_cast<uint64_t>(v) >> (8 * i)) & 0xFF));
    }
    void put_str(const std::string &s) {
        put<uint32_t>(static_cast<uint32_t>(s.size()));
        buf += s;
    }
};

struct Reader {
    std::string_view buf;
    size_t pos = 0;
    template <typename T>
    T get() {
        if (pos + sizeof(T) > buf.size()) throw InputError("cache: truncated record");
        uint64_t v = 0;
        for (size_t i = 0; i < sizeof(T); i++) v |= static_cast<uint64_t>(static_cast<uint8_t>(buf[pos + i])) << (8 * i);
        pos += sizeof(T);
        return static_cast<T>(v);
    }
    std::string get_str() {
        auto len = get<uint32_t>();
        if (pos + len > buf.size()) throw InputError("cache: truncated string");
        std::string s(buf.substr(pos, len));
        pos += len;
        return s;
    }
    bool done() const { return pos == buf.size(); }
};

void put_profile(Writer &w, const WernerProfile &p) {
    for (const auto &row : p.counts) {
        for (int k = 0; k <= p.n; k++) w.put<uint32_t>(row[k]);
    }
}

WernerProfile get_profile(Reader &r, int n) {
    WernerProfile p;
    p.n = n;
    for (auto &row : p.counts) {
        for (int k = 0; k <= n; k++) row[k] = r.get<uint32_t>();
    }
    return p;
}

std::string encode_protocol(const Protocol &p) {
    Writer w;
    w.put<uint64_t>(p.case_index);
    w.put<uint8_t>(p.source_case.has_value());
    auto c = p.source_case.value_or(WernerCase{});
    w.put<uint32_t>(c.a);
    w.put<uint32_t>(c.b);
    w.put<uint32_t>(c.e);
    for (int i = 0; i < 2 * p.n; i++) w.put<uint32_t>(p.rep.matrix().row(i));
    put_profile(w, p.profile);
    w.put_str(p.stats.p_suc.coeff_str());
    w.put_str(p.stats.f_num.coeff_str());
    for (const auto &fi : p.stats.fi_nums) w.put_str(fi.coeff_str());
    return w.buf;
}

Protocol decode_protocol(std::string_view payload, int n) {
    Reader r{payload};
    Protocol p;
    p.n = n;
    p.case_index = r.get<uint64_t>();
    bool has_case = r.get<uint8_t>();
    WernerCase c;
    c.a = r.get<uint32_t>();
    c.b = r.get<uint32_t>();
    c.e = r.get<uint32_t>();
    if (has_case) p.source_case = c;
    BinaryMatrix m(n);
    for (int i = 0; i < 2 * n; i++) m.set_row(i, r.get<uint32_t>());
    p.rep = SymplecticMatrix::trusted(m);
    p.profile = get_profile(r, n);
    p.stats.p_suc = RationalPolynomial::parse_coeffs(r.get_str());
    p.stats.f_num = RationalPolynomial::parse_coeffs(r.get_str());
    for (auto &fi : p.stats.fi_nums) fi = RationalPolynomial::parse_coeffs(r.get_str());
    if (!r.done()) throw InputError("cache: trailing bytes in protocol record");
    return p;
}

std::string encode_entry(const TransversalEntry &e, int n) {
    Writer w;
    w.put<uint64_t>(static_cast<uint64_t>(e.key));
    w.put<uint64_t>(static_cast<uint64_t>(e.key >> 64));
    for (int i = 0; i < 2 * n; i++) w.put<uint16_t>(e.rows[i]);
    return w.buf;
}

TransversalEntry decode_entry(std::string_view payload, int n) {
    Reader r{payload};
    TransversalEntry e;
    uint64_t lo = r.get<uint64_t>(), hi = r.get<uint64_t>();
    e.key = (static_cast<PackedKey>(hi) << 64) | lo;
    for (int i = 0; i < 2 * n; i++) e.rows[i] = r.get<uint16_t>();
    if (!r.done()) throw InputError("cache: trailing bytes in transversal record");
    return e;
}

nlohmann::json header_json(const CacheHeader &h) {
    return {{"format", "bcdist-cache"}, {"version", h.version}, {"n", h.n},     {"mode", h.mode},
            {"seed", h.seed},           {"records", h.records}, {"params", nlohmann::json::parse(h.params)}};
}

void write_file(const std::string &path, const CacheHeader &header, const std::vector<std::string> &records) {
    auto tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw InputError("cache: cannot write " + path);
        Writer w;
        w.buf.append(kCacheMagic, 4);
        w.put_str(header_json(header).dump());
        out.write(w.buf.data(), static_cast<std::streamsize>(w.buf.size()));
        for (const auto &rec : records) {
            Writer r;
            r.put_str(rec);
            out.write(r.buf.data(), static_cast<std::streamsize>(r.buf.size()));
        }
        if (!out.flush()) throw InputError("cache: cannot write " + path);
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) throw InputError("cache: cannot write " + path + ": " + ec.message());
}

std::string slurp(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw MissingCache("cache file " + path + " not found");
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

struct CacheFile {
    CacheHeader header;
    std::string data;
    std::vector<std::string_view> records;
};

CacheHeader parse_header(std::string_view json_text, const std::string &path) {
    CacheHeader h;
    try {
        auto j = nlohmann::json::parse(json_text);
        if (j.value("format", "") != "bcdist-cache") throw InputError("cache: " + path + " has an unknown format");
        if (!j.contains("version")) throw InputError("cache: " + path + " has no version field");
        h.version = j.at("version").get<int>();
        h.n = j.at("n").get<int>();
        h.mode = j.at("mode").get<std::string>();
        h.seed = j.at("seed").get<uint64_t>();
        h.records = j.at("records").get<uint64_t>();
        h.params = j.at("params").dump();
    } catch (const nlohmann::json::exception &e) {
        throw InputError("cache: bad header in " + path + ": " + e.what());
    }
    if (h.version != kCacheVersion) {
        throw InputError("cache: " + path + " has version " + std::to_string(h.version) + ", expected " +
                         std::to_string(kCacheVersion));
    }
    if (h.n < 1 || h.n > kMaxPairs) throw InputError("cache: " + path + " has an invalid pair count");
    return h;
}

CacheFile load(const std::string &path, const std::string &mode) {
    CacheFile f;
    f.data = slurp(path);
    Reader r{f.data};
    if (f.data.size() < 4 || !std::equal(kCacheMagic, kCacheMagic + 4, f.data.begin())) {
        throw InputError("cache: " + path + " is not a bcdist cache");
    }
    r.pos = 4;
    f.header = parse_header(r.get_str(), path);
    if (!mode.empty() && f.header.mode != mode) {
        throw InputError("cache: " + path + " holds " + f.header.mode + " data, expected " + mode);
    }
    while (!r.done()) {
        auto len = r.get<uint32_t>();
        if (r.pos + len > f.data.size()) throw InputError("cache: " + path + " is truncated");
        f.records.push_back(std::string_view(f.data).substr(r.pos, len));
        r.pos += len;
    }
    if (f.records.size() != f.header.records) throw InputError("cache: " + path + " record count mismatch");
    return f;
}

}  // namespace

std::string werner_cache_path(const std::string &dir, int n) {
    return (std::filesystem::path(dir) / ("werner_n" + std::to_string(n) + ".bcdc")).string();
}

std::string transversal_cache_path(const std::string &dir, int n) {
    return (std::filesystem::path(dir) / ("transversal_n" + std::to_string(n) + ".bcdc")).string();
}

void write_werner_cache(const std::string &path, const DistinctResult &result, uint64_t chunk_cases) {
    CacheHeader h;
    h.n = result.n;
    h.mode = "werner";
    h.records = result.protocols.size();
    h.params = nlohmann::json{{"cases", result.cases}, {"chunk_cases", chunk_cases}}.dump();
    std::vector<std::string> records;
    records.reserve(result.protocols.size());
    for (const auto &p : result.protocols) records.push_back(encode_protocol(p));
    write_file(path, h, records);
}

void write_transversal_cache(const std::string &path, const Transversal &t, uint64_t seed) {
    CacheHeader h;
    h.n = t.n;
    h.mode = "transversal";
    h.seed = seed;
    h.records = t.entries.size();
    h.params = nlohmann::json{{"target_size", t.target_size.str()}, {"complete", t.complete}, {"samples", t.samples}}
                   .dump();
    std::vector<std::string> records;
    records.reserve(t.entries.size());
    for (const auto &e : t.entries) records.push_back(encode_entry(e, t.n));
    write_file(path, h, records);
}

CacheHeader read_cache_header(const std::string &path) {
    return load(path, "").header;
}

DistinctResult read_werner_cache(const std::string &path, CacheHeader *header) {
    auto f = load(path, "werner");
    DistinctResult r;
    r.n = f.header.n;
    try {
        r.cases = nlohmann::json::parse(f.header.params).at("cases").get<uint64_t>();
    } catch (const nlohmann::json::exception &e) {
        throw InputError("cache: " + path + " has bad parameters: " + e.what());
    }
    r.protocols.reserve(f.records.size());
    for (auto rec : f.records) r.protocols.push_back(decode_protocol(rec, r.n));
    if (header) *header = f.header;
    return r;
}

Transversal read_transversal_cache(const std::string &path, CacheHeader *header) {
    auto f = load(path, "transversal");
    Transversal t;
    t.n = f.header.n;
    try {
        auto params = nlohmann::json::parse(f.header.params);
        t.target_size = BigInt(params.at("target_size").get<std::string>());
        t.complete = params.at("complete").get<bool>();
        t.samples = params.at("samples").get<uint64_t>();
    } catch (const std::exception &e) {
        throw InputError("cache: " + path + " has bad parameters: " + e.what());
    }
    if (t.n > kMaxTransversalPairs) throw InputError("cache: " + path + " has an invalid pair count");
    t.entries.reserve(f.records.size());
    for (auto rec : f.records) t.entries.push_back(decode_entry(rec, t.n));
    if (header) *header = f.header;
    return t;
}

VerifyReport verify_cache(const std::string &path, uint64_t samples, uint64_t seed) {
    VerifyReport rep;
    rep.header = read_cache_header(path);
    int n = rep.header.n;
    std::vector<uint64_t> pick(rep.header.records);
    std::iota(pick.begin(), pick.end(), 0);
    Rng rng(seed);
    std::shuffle(pick.begin(), pick.end(), rng);
    pick.resize(std::min<uint64_t>(samples, pick.size()));
    std::sort(pick.begin(), pick.end());
    if (rep.header.mode == "werner") {
        auto r = read_werner_cache(path);
        for (auto i : pick) {
            const auto &p = r.protocols[i];
            bool ok = is_symplectic(p.rep.matrix());
            if (ok && p.source_case) ok = build_representative(*p.source_case, n) == p.rep;
            if (ok) {
                auto fresh = make_protocol(p.rep);
                ok = fresh.profile == p.profile && fresh.stats == p.stats;
            }
            rep.checked++;
            rep.mismatches += !ok;
        }
    } else if (rep.header.mode == "transversal") {
        auto t = read_transversal_cache(path);
        for (size_t i = 1; i < t.entries.size(); i++) {
            if (!(t.entries[i - 1].key < t.entries[i].key)) rep.mismatches++;
        }
        for (auto i : pick) {
            auto m = unpack_rows(t.entries[i].rows, n);
            bool ok = is_symplectic(m) && pack_key(coset_key(SymplecticMatrix::trusted(m))) == t.entries[i].key;
            rep.checked++;
            rep.mismatches += !ok;
        }
    } else {
        throw InputError("cache: " + path + " has unknown mode " + rep.header.mode);
    }
    return rep;
}

ChunkJournal::ChunkJournal(std::string path, int n, uint64_t chunk_cases) : path_(std::move(path)), n_(n) {
    auto params = nlohmann::json{{"n", n}, {"chunk_cases", chunk_cases}, {"version", kCacheVersion}}.dump();
    size_t valid = 0;
    {
        std::ifstream in(path_, std::ios::binary);
        if (in) {
            std::ostringstream os;
            os << in.rdbuf();
            std::string data = os.str();
            Reader r{data};
            try {
                if (data.size() >= 4 && std::equal(kJournalMagic, kJournalMagic + 4, data.begin())) {
                    r.pos = 4;
                    if (r.get_str() == params) {
                        valid = r.pos;
                        while (!r.done()) {
                            auto payload = r.get_str();
                            Reader pr{payload};
                            auto chunk = pr.get<uint64_t>();
                            auto count = pr.get<uint32_t>();
                            ChunkResult res;
                            for (uint32_t k = 0; k < count; k++) {
                                auto idx = pr.get<uint64_t>();
                                res.firsts.emplace_back(idx, get_profile(pr, n));
                            }
                            if (!pr.done()) break;
                            chunks_[chunk] = std::move(res);
                            valid = r.pos;
                        }
                    }
                }
            } catch (const InputError &) {
                // A torn final record is dropped; everything before it is kept.
            }
        }
    }
    if (valid == 0) {
        chunks_.clear();
        std::ofstream fresh(path_, std::ios::binary | std::ios::trunc);
        if (!fresh) throw InputError("journal: cannot write " + path_);
        Writer w;
        w.buf.append(kJournalMagic, 4);
        w.put_str(params);
        fresh.write(w.buf.data(), static_cast<std::streamsize>(w.buf.size()));
    } else {
        std::filesystem::resize_file(path_, valid);
    }
    out_.open(path_, std::ios::binary | std::ios::app);
    if (!out_) throw InputError("journal: cannot write " + path_);
}

std::optional<ChunkResult> ChunkJournal::lookup(uint64_t chunk) const {
    auto it = chunks_.find(chunk);
    if (it == chunks_.end()) return std::nullopt;
    return it->second;
}

void ChunkJournal::append(uint64_t chunk, const ChunkResult &result) {
    Writer p;
    p.put<uint64_t>(chunk);
    p.put<uint32_t>(static_cast<uint32_t>(result.firsts.size()));
    for (const auto &[idx, prof] : result.firsts) {
        p.put<uint64_t>(idx);
        put_profile(p, prof);
    }
    Writer w;
    w.put_str(p.buf);
    out_.write(w.buf.data(), static_cast<std::streamsize>(w.buf.size()));
    out_.flush();
    chunks_[chunk] = result;
}

void ChunkJournal::remove() {
    out_.close();
    std::error_code ec;
    std::filesystem::remove(path_, ec);
}

}  // namespace bcd
