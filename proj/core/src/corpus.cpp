#include "jacq/corpus.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "jacq/pgm.hpp"
#include "json_convert.hpp"

namespace jacq {

namespace fs = std::filesystem;
using nlohmann::json;

fs::path frame_path(const fs::path& dir, int index, char view) {
  char name[32];
  std::snprintf(name, sizeof name, "%04d_%c.pgm", index, view);
  return dir / name;
}

void write_corpus(const fs::path& dir, const std::vector<CorpusItem>& items,
                  const std::optional<CorpusManifest>& manifest) {
  fs::create_directories(dir);
  std::ofstream labels(dir / "labels.csv");
  if (!labels) throw std::runtime_error("cannot write " + (dir / "labels.csv").string());
  labels << "index,label,defect_type\n";
  for (std::size_t i = 0; i < items.size(); ++i) {
    const int index = static_cast<int>(i);
    write_pgm_file(frame_path(dir, index, 'a'), items[i].frames.a);
    write_pgm_file(frame_path(dir, index, 'b'), items[i].frames.b);
    labels << index << ',' << items[i].label << ',' << to_string(items[i].defect) << '\n';
  }
  if (!labels) throw std::runtime_error("write failed for " + (dir / "labels.csv").string());
  if (manifest) {
    std::ofstream meta(dir / "corpus.json");
    meta << manifest_to_json(*manifest) << '\n';
    if (!meta) throw std::runtime_error("write failed for " + (dir / "corpus.json").string());
  }
}

std::vector<CorpusEntry> read_corpus_index(const fs::path& dir) {
  const fs::path file = dir / "labels.csv";
  std::ifstream in(file);
  if (!in) throw std::runtime_error("cannot open " + file.string());
  std::vector<CorpusEntry> entries;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || (line_no == 1 && line.rfind("index", 0) == 0)) continue;
    std::istringstream row(line);
    std::string index, label, defect;
    const auto bad = [&](const std::string& why) {
      return std::runtime_error(file.string() + ":" + std::to_string(line_no) + ": " + why);
    };
    if (!std::getline(row, index, ',') || !std::getline(row, label, ',')) throw bad("expected index,label[,defect_type]");
    std::getline(row, defect);
    CorpusEntry e;
    try {
      std::size_t used = 0;
      e.index = std::stoi(index, &used);
      if (used != index.size() || e.index < 0) throw std::invalid_argument(index);
      e.label = std::stoi(label, &used);
      if (used != label.size()) throw std::invalid_argument(label);
    } catch (const std::exception&) {
      throw bad("non-numeric index or label");
    }
    if (e.label != 0 && e.label != 1) throw bad("label must be 0 or 1");
    try {
      e.defect = defect.empty() ? (e.label ? DefectType::missing_thread : DefectType::none)
                                : parse_defect_type(defect);
    } catch (const std::invalid_argument& ex) {
      throw bad(ex.what());
    }
    if ((e.defect != DefectType::none) != (e.label == 1)) throw bad("label disagrees with defect_type");
    entries.push_back(e);
  }
  return entries;
}

std::vector<CorpusItem> read_corpus(const fs::path& dir) {
  std::vector<CorpusItem> items;
  for (const CorpusEntry& e : read_corpus_index(dir)) {
    items.push_back(CorpusItem{FramePair{read_pgm_file(frame_path(dir, e.index, 'a')),
                                         read_pgm_file(frame_path(dir, e.index, 'b'))},
                               e.label, e.defect});
  }
  return items;
}

std::string manifest_to_json(const CorpusManifest& m) {
  const json doc = {
      {"base", detail::spec_to_value(m.base)},
      {"n", m.n},
      {"defect_fraction", m.defect_fraction},
      {"seed", m.seed},
  };
  return doc.dump(2);
}

CorpusManifest manifest_from_json(const std::string& text) {
  try {
    const json doc = json::parse(text);
    CorpusManifest m;
    m.base = detail::spec_from_value(doc.at("base"), SynthSpec{});
    m.n = doc.at("n").get<int>();
    m.defect_fraction = doc.at("defect_fraction").get<double>();
    m.seed = doc.at("seed").get<std::uint64_t>();
    return m;
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("corpus.json: ") + e.what());
  }
}

}  // namespace jacq
