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

#ifndef BCDIST_CACHE_H
#define BCDIST_CACHE_H

#include <cstdint>
#include <fstream>
#include <map>
#include <optional>
#include <string>

#include "bcdist/transversal.h"
#include "bcdist/werner_enum.h"

namespace bcd {

/// File layout: "BCDC", u32 LE header length, JSON header, then records each
/// prefixed by a u32 LE length.
inline constexpr int kCacheVersion = 1;

struct CacheHeader {
    int version = kCacheVersion;
    int n = 1;
    /// "werner" or "transversal".
    std::string mode;
    uint64_t seed = 0;
    uint64_t records = 0;
    /// Creation parameters, stored as JSON text.
    std::string params = "{}";
};

/// Werner cache path under `dir`: werner_n<N>.bcdc.
std::string werner_cache_path(const std::string &dir, int n);
/// Transversal cache path under `dir`: transversal_n<N>.bcdc.
std::string transversal_cache_path(const std::string &dir, int n);

/// Writes atomically through a temporary file. Throws InputError when the path is unwritable.
void write_werner_cache(const std::string &path, const DistinctResult &result, uint64_t chunk_cases);
void write_transversal_cache(const std::string &path, const Transversal &t, uint64_t seed);

/// Throws MissingCache when absent, InputError when malformed or of another mode.
CacheHeader read_cache_header(const std::string &path);
DistinctResult read_werner_cache(const std::string &path, CacheHeader *header = nullptr);
Transversal read_transversal_cache(const std::string &path, CacheHeader *header = nullptr);

struct VerifyReport {
    CacheHeader header;
    uint64_t checked = 0;
    uint64_t mismatches = 0;
    bool ok() const { return mismatches == 0; }
};

/// Recomputes `samples` randomly chosen records and compares exactly.
VerifyReport verify_cache(const std::string &path, uint64_t samples = 100, uint64_t seed = 1);

/// Append-only record of finished werner chunks so an interrupted run resumes.
/// A journal written for different parameters is discarded on open.
class ChunkJournal {
   public:
    ChunkJournal(std::string path, int n, uint64_t chunk_cases);
    std::optional<ChunkResult> lookup(uint64_t chunk) const;
    void append(uint64_t chunk, const ChunkResult &result);
    size_t size() const { return chunks_.size(); }
    /// Deletes the journal file.
    void remove();

   private:
    std::string path_;
    int n_;
    std::map<uint64_t, ChunkResult> chunks_;
    std::ofstream out_;
};

}  // namespace bcd

#endif
