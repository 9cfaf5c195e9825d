#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "jacq/synthgen.hpp"

namespace jacq {

/// How a corpus directory was produced; stored as corpus.json.
struct CorpusManifest {
  SynthSpec base;
  int n = 0;
  double defect_fraction = 0.0;
  std::uint64_t seed = 0;
};

/// One row of labels.csv.
struct CorpusEntry {
  int index = 0;
  int label = 0;
  DefectType defect = DefectType::none;
};

std::filesystem::path frame_path(const std::filesystem::path& dir, int index, char view);

/// Writes NNNN_a.pgm, NNNN_b.pgm, labels.csv ("index,label,defect_type") and
/// corpus.json. Creates dir if needed.
void write_corpus(const std::filesystem::path& dir, const std::vector<CorpusItem>& items,
                  const std::optional<CorpusManifest>& manifest);

/// Parses labels.csv. Throws std::runtime_error naming the file and line on
/// malformed input.
std::vector<CorpusEntry> read_corpus_index(const std::filesystem::path& dir);

std::vector<CorpusItem> read_corpus(const std::filesystem::path& dir);

/// corpus.json as JSON text and back.
std::string manifest_to_json(const CorpusManifest& manifest);
CorpusManifest manifest_from_json(const std::string& text);

}  // namespace jacq
