// Copyright 2026 The labelcrypt Authors.
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

#include "labelcrypt/io.h"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <regex>
#include <sstream>
#include <string_view>

#include <nlohmann/json.hpp>

#include "labelcrypt/error.h"

namespace labelcrypt::io {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

json Parse(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kFormat, e.what());
  }
}

// Field access with format errors instead of json exceptions.
template <typename T>
T Field(const json& j, const char* name) {
  if (!j.is_object() || !j.contains(name)) {
    throw Error(ErrorCode::kFormat, std::string("missing field '") + name + "'");
  }
  try {
    return j.at(name).get<T>();
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kFormat,
                std::string("bad field '") + name + "': " + e.what());
  }
}

std::vector<std::string_view> SplitCommas(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (;;) {
    const std::size_t comma = line.find(',', start);
    out.push_back(line.substr(start, comma - start));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

std::string_view Trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() &&
         (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

double ToDouble(std::string_view s) {
  s = Trim(s);
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw Error(ErrorCode::kFormat, "not a number: '" + std::string(s) + "'");
  }
  return v;
}

template <typename Int>
Int ToInt(std::string_view s) {
  s = Trim(s);
  Int v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw Error(ErrorCode::kFormat, "not an integer: '" + std::string(s) + "'");
  }
  return v;
}

std::string FormatDouble(double v) {
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

std::string JoinDoubles(std::span<const double> values) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out += ',';
    out += FormatDouble(values[i]);
  }
  return out;
}

std::vector<double> ParseDoubles(std::string_view line) {
  std::vector<double> out;
  if (Trim(line).empty()) return out;
  for (std::string_view field : SplitCommas(line)) out.push_back(ToDouble(field));
  return out;
}

std::vector<std::string> ReadLines(const fs::path& path) {
  std::istringstream in(ReadFile(path));
  std::vector<std::string> lines;
  for (std::string line; std::getline(in, line);) {
    if (!Trim(line).empty()) lines.push_back(line);
  }
  return lines;
}

// Number of leading f0, f1, ... columns in a CSV header.
std::size_t CountFeatureColumns(const std::vector<std::string_view>& header) {
  std::size_t d = 0;
  while (d < header.size() && Trim(header[d]) == "f" + std::to_string(d)) ++d;
  return d;
}

std::string FeatureHeader(std::size_t d) {
  std::string out;
  for (std::size_t j = 0; j < d; ++j) out += "f" + std::to_string(j) + ",";
  return out;
}

json PublicKeyJson(const PublicKey& pk) {
  return json{{"q", pk.group.q()},
              {"p", pk.group.p()},
              {"g1", pk.group.generator().residue},
              {"g2", pk.g2.residue},
              {"h", pk.h.residue}};
}

GroupParams GroupFromJson(const json& j) {
  try {
    return GroupParams::FromParts(Field<std::uint64_t>(j, "q"),
                                  Field<std::uint64_t>(j, "p"),
                                  Field<std::uint64_t>(j, "g1"));
  } catch (const Error& e) {
    if (e.code() == ErrorCode::kFormat) throw;
    throw Error(ErrorCode::kFormat, e.what());
  }
}

PublicKey PublicKeyFromJson(const json& j) {
  GroupParams group = GroupFromJson(j);
  const GroupElement g2 = group.Element(Field<std::uint64_t>(j, "g2"));
  const GroupElement h = group.Element(Field<std::uint64_t>(j, "h"));
  return PublicKey{std::move(group), g2, h};
}

}  // namespace

std::string FormatGroupParams(const GroupParams& group) {
  return json{{"q", group.q()},
              {"p", group.p()},
              {"g1", group.generator().residue}}
             .dump(2) +
         "\n";
}

GroupParams ParseGroupParams(const std::string& text) {
  return GroupFromJson(Parse(text));
}

std::string FormatPublicKey(const PublicKey& pk) {
  return PublicKeyJson(pk).dump(2) + "\n";
}

PublicKey ParsePublicKey(const std::string& text) {
  return PublicKeyFromJson(Parse(text));
}

std::string FormatSecretKey(const SecretKey& sk) {
  return json{{"j", sk.id}, {"a", sk.a.value}, {"b", sk.b.value}}.dump(2) + "\n";
}

SecretKey ParseSecretKey(const std::string& text) {
  const json j = Parse(text);
  return SecretKey{Field<int>(j, "j"), Exponent{Field<std::uint64_t>(j, "a")},
                   Exponent{Field<std::uint64_t>(j, "b")}};
}

std::string FormatAuthority(const AuthorityState& authority) {
  json issued = json::array();
  for (Exponent b : authority.issued_b) issued.push_back(b.value);
  return json{{"t", authority.t.value},
              {"a1", authority.a1.value},
              {"b1", authority.b1.value},
              {"issued_b", issued}}
             .dump(2) +
         "\n";
}

AuthorityState ParseAuthority(const GroupParams& group,
                              const std::string& text) {
  const json j = Parse(text);
  AuthorityState a;
  try {
    a.t = group.Exp(Field<std::uint64_t>(j, "t"));
    a.a1 = group.Exp(Field<std::uint64_t>(j, "a1"));
    a.b1 = group.Exp(Field<std::uint64_t>(j, "b1"));
    for (std::uint64_t b : Field<std::vector<std::uint64_t>>(j, "issued_b")) {
      a.issued_b.push_back(group.Exp(b));
    }
  } catch (const Error& e) {
    if (e.code() == ErrorCode::kFormat) throw;
    throw Error(ErrorCode::kFormat, e.what());
  }
  if (a.t.value == 0 || a.issued_b.empty() || a.issued_b.front() != a.b1) {
    throw Error(ErrorCode::kFormat, "inconsistent authority state");
  }
  return a;
}

std::string FormatModel(const ModelParams& model) {
  json layers = json::array();
  for (const DenseLayer& layer : model.layers) {
    layers.push_back(json{{"in", layer.in},
                          {"out", layer.out},
                          {"weights", layer.weights},
                          {"bias", layer.bias}});
  }
  return json{{"architecture", model.hidden == 0 ? "linear" : "mlp"},
              {"input_dim", model.input_dim},
              {"hidden", model.hidden},
              {"blocks", model.blocks},
              {"block_width", model.block_width},
              {"layers", layers}}
             .dump() +
         "\n";
}

ModelParams ParseModel(const std::string& text) {
  const json j = Parse(text);
  ModelParams m;
  m.input_dim = Field<std::size_t>(j, "input_dim");
  m.hidden = Field<std::size_t>(j, "hidden");
  m.blocks = Field<int>(j, "blocks");
  m.block_width = Field<std::size_t>(j, "block_width");
  const auto arch = Field<std::string>(j, "architecture");
  if (arch != (m.hidden == 0 ? "linear" : "mlp")) {
    throw Error(ErrorCode::kFormat, "architecture tag does not match hidden");
  }
  if (!j.contains("layers") || !j["layers"].is_array()) {
    throw Error(ErrorCode::kFormat, "missing layers");
  }
  for (const json& lj : j["layers"]) {
    DenseLayer layer{Field<std::size_t>(lj, "in"), Field<std::size_t>(lj, "out"),
                     Field<std::vector<double>>(lj, "weights"),
                     Field<std::vector<double>>(lj, "bias")};
    if (layer.weights.size() != layer.in * layer.out ||
        layer.bias.size() != layer.out) {
      throw Error(ErrorCode::kFormat, "layer array sizes do not match dims");
    }
    m.layers.push_back(std::move(layer));
  }
  const std::size_t expected_layers = m.hidden == 0 ? 1 : 2;
  if (m.layers.size() != expected_layers || m.layers.front().in != m.input_dim ||
      m.layers.back().out != m.output_dim() ||
      (m.hidden != 0 && (m.layers[0].out != m.hidden || m.layers[1].in != m.hidden))) {
    throw Error(ErrorCode::kFormat, "layer shapes do not match model dims");
  }
  return m;
}

std::string FormatConfusedLabel(const ConfusedLabel& label) {
  return JoinDoubles(label.values);
}

ConfusedLabel ParseConfusedLabel(const std::string& line) {
  return ConfusedLabel{ParseDoubles(line)};
}

std::string ReadFile(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void WriteFile(const fs::path& path, const std::string& contents, bool secret) {
  if (path.has_parent_path()) {
    std::error_code ec;
    fs::create_directories(path.parent_path(), ec);
  }
  {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::kIo, "cannot write " + path.string());
    if (secret) {
      std::error_code ec;
      fs::permissions(path, fs::perms::owner_read | fs::perms::owner_write,
                      fs::perm_options::replace, ec);
    }
    out << contents;
    if (!out) throw Error(ErrorCode::kIo, "write failed for " + path.string());
  }
}

void SavePublicKey(const fs::path& path, const PublicKey& pk) {
  WriteFile(path, FormatPublicKey(pk));
}
PublicKey LoadPublicKey(const fs::path& path) {
  return ParsePublicKey(ReadFile(path));
}
void SaveSecretKey(const fs::path& path, const SecretKey& sk) {
  WriteFile(path, FormatSecretKey(sk), /*secret=*/true);
}
SecretKey LoadSecretKey(const fs::path& path) {
  return ParseSecretKey(ReadFile(path));
}
void SaveAuthority(const fs::path& path, const AuthorityState& authority) {
  WriteFile(path, FormatAuthority(authority), /*secret=*/true);
}
AuthorityState LoadAuthority(const fs::path& path, const GroupParams& group) {
  return ParseAuthority(group, ReadFile(path));
}
void SaveModel(const fs::path& path, const ModelParams& model) {
  WriteFile(path, FormatModel(model));
}
ModelParams LoadModel(const fs::path& path) { return ParseModel(ReadFile(path)); }

LabeledDataset LoadPlainCsv(const fs::path& path, int num_classes) {
  const std::vector<std::string> lines = ReadLines(path);
  if (lines.empty()) throw Error(ErrorCode::kFormat, path.string() + " is empty");
  const auto header = SplitCommas(lines[0]);
  const std::size_t d = CountFeatureColumns(header);
  if (d == 0 || header.size() != d + 1 || Trim(header[d]) != "label") {
    throw Error(ErrorCode::kFormat,
                "expected header f0,...,f{d-1},label in " + path.string());
  }
  LabeledDataset out;
  out.features = Matrix(0, d);
  int max_label = -1;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto fields = SplitCommas(lines[i]);
    if (fields.size() != d + 1) {
      throw Error(ErrorCode::kFormat,
                  path.string() + ":" + std::to_string(i + 1) +
                      ": wrong column count");
    }
    std::vector<double> row(d);
    for (std::size_t j = 0; j < d; ++j) row[j] = ToDouble(fields[j]);
    out.features.AppendRow(row);
    const int y = ToInt<int>(fields[d]);
    out.labels.push_back(y);
    max_label = std::max(max_label, y);
  }
  out.num_classes = num_classes > 0 ? num_classes : max_label + 1;
  out.Validate();
  return out;
}

void SavePlainCsv(const fs::path& path, const LabeledDataset& dataset) {
  std::string out = FeatureHeader(dataset.dim()) + "label\n";
  for (std::size_t i = 0; i < dataset.size(); ++i) {
    out += JoinDoubles(dataset.features.row(i)) + "," +
           std::to_string(dataset.labels[i]) + "\n";
  }
  WriteFile(path, out);
}

Matrix LoadFeatureCsv(const fs::path& path) {
  const std::vector<std::string> lines = ReadLines(path);
  if (lines.empty()) throw Error(ErrorCode::kFormat, path.string() + " is empty");
  const auto header = SplitCommas(lines[0]);
  const std::size_t d = CountFeatureColumns(header);
  if (d == 0) {
    throw Error(ErrorCode::kFormat, "expected header f0,... in " + path.string());
  }
  Matrix out(0, d);
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto fields = SplitCommas(lines[i]);
    if (fields.size() != header.size()) {
      throw Error(ErrorCode::kFormat,
                  path.string() + ":" + std::to_string(i + 1) +
                      ": wrong column count");
    }
    std::vector<double> row(d);
    for (std::size_t j = 0; j < d; ++j) row[j] = ToDouble(fields[j]);
    out.AppendRow(row);
  }
  return out;
}

fs::path SidecarPath(const fs::path& csv_path) {
  return fs::path(csv_path.string() + ".meta.json");
}

void SaveEncryptedDataset(const fs::path& csv_path,
                          const EncryptedDataset& dataset) {
  std::string csv = FeatureHeader(dataset.dim()) + "u1,u2,u3\n";
  for (std::size_t i = 0; i < dataset.size(); ++i) {
    const Ciphertext& c = dataset.labels[i];
    csv += JoinDoubles(dataset.features.row(i)) + "," +
           std::to_string(c.u1.residue) + "," + std::to_string(c.u2.residue) +
           "," + std::to_string(c.u3.residue) + "\n";
  }
  WriteFile(csv_path, csv);

  json meta = PublicKeyJson(dataset.pk);
  meta["z"] = dataset.num_classes;
  json records = json::array();
  for (const VerificationRecord& r : dataset.records) {
    json expected = json::object();
    for (const auto& [id, index] : r.expected) {
      expected[std::to_string(id)] = index;
    }
    records.push_back(json{
        {"x_bar", JoinDoubles(r.probe)},
        {"c_bar", {r.fake.u1.residue, r.fake.u2.residue, r.fake.u3.residue}},
        {"expected", expected},
        {"copies", r.copies}});
  }
  meta["records"] = records;
  // The expected map is arbitration material; keep it owner-only.
  WriteFile(SidecarPath(csv_path), meta.dump(2) + "\n", /*secret=*/true);
}

EncryptedDataset LoadEncryptedDataset(const fs::path& csv_path) {
  const json meta = Parse(ReadFile(SidecarPath(csv_path)));
  PublicKey pk = PublicKeyFromJson(meta);
  const GroupParams& group = pk.group;
  EncryptedDataset out{Matrix(), {}, pk, Field<int>(meta, "z"), {}};

  const std::vector<std::string> lines = ReadLines(csv_path);
  if (lines.empty()) {
    throw Error(ErrorCode::kFormat, csv_path.string() + " is empty");
  }
  const auto header = SplitCommas(lines[0]);
  const std::size_t d = CountFeatureColumns(header);
  if (d == 0 || header.size() != d + 3 || Trim(header[d]) != "u1" ||
      Trim(header[d + 1]) != "u2" || Trim(header[d + 2]) != "u3") {
    throw Error(ErrorCode::kFormat,
                "expected header f0,...,f{d-1},u1,u2,u3 in " + csv_path.string());
  }
  out.features = Matrix(0, d);
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto fields = SplitCommas(lines[i]);
    if (fields.size() != d + 3) {
      throw Error(ErrorCode::kFormat,
                  csv_path.string() + ":" + std::to_string(i + 1) +
                      ": wrong column count");
    }
    std::vector<double> row(d);
    for (std::size_t j = 0; j < d; ++j) row[j] = ToDouble(fields[j]);
    out.features.AppendRow(row);
    out.labels.push_back(
        Ciphertext{group.Element(ToInt<std::uint64_t>(fields[d])),
                   group.Element(ToInt<std::uint64_t>(fields[d + 1])),
                   group.Element(ToInt<std::uint64_t>(fields[d + 2]))});
  }

  if (meta.contains("records")) {
    for (const json& rj : meta["records"]) {
      VerificationRecord r;
      r.probe = ParseDoubles(Field<std::string>(rj, "x_bar"));
      const auto c = Field<std::vector<std::uint64_t>>(rj, "c_bar");
      if (c.size() != 3) throw Error(ErrorCode::kFormat, "c_bar needs 3 entries");
      r.fake = Ciphertext{group.Element(c[0]), group.Element(c[1]),
                          group.Element(c[2])};
      const json expected = Field<json>(rj, "expected");
      for (const auto& [id, index] : expected.items()) {
        r.expected[ToInt<int>(id)] = index.get<std::uint64_t>();
      }
      r.copies = Field<int>(rj, "copies");
      if (r.probe.size() != d || r.copies < 1) {
        throw Error(ErrorCode::kFormat, "malformed verification record");
      }
      out.records.push_back(std::move(r));
    }
  }
  if (out.original_size() > out.size()) {
    throw Error(ErrorCode::kFormat, "record copies exceed row count");
  }
  return out;
}

void SaveConfusedLabels(const fs::path& path,
                        const std::vector<ConfusedLabel>& labels) {
  std::string out;
  for (const ConfusedLabel& label : labels) out += FormatConfusedLabel(label) + "\n";
  WriteFile(path, out);
}

std::vector<ConfusedLabel> LoadConfusedLabels(const fs::path& path) {
  std::vector<ConfusedLabel> out;
  for (const std::string& line : ReadLines(path)) {
    out.push_back(ParseConfusedLabel(line));
  }
  return out;
}

fs::path PublicKeyPath(const fs::path& dir) { return dir / "public.json"; }
fs::path SecretKeyPath(const fs::path& dir, int id) {
  return dir / ("secret_" + std::to_string(id) + ".json");
}
fs::path AuthorityPath(const fs::path& dir) { return dir / "authority.json"; }

std::vector<SecretKey> LoadAllSecretKeys(const fs::path& dir) {
  static const std::regex kName(R"(secret_(\d+)\.json)");
  std::vector<SecretKey> keys;
  std::error_code ec;
  for (const auto& entry : fs::directory_iterator(dir, ec)) {
    const std::string name = entry.path().filename().string();
    if (std::regex_match(name, kName)) keys.push_back(LoadSecretKey(entry.path()));
  }
  if (ec) throw Error(ErrorCode::kIo, "cannot list " + dir.string());
  std::sort(keys.begin(), keys.end(),
            [](const SecretKey& a, const SecretKey& b) { return a.id < b.id; });
  return keys;
}

}  // namespace labelcrypt::io
