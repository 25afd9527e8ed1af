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

// On-disk formats.
//
//   group params   JSON {"q","p","g1"}; the index table is rebuilt on load
//   public key     JSON {"q","p","g1","g2","h"}
//   secret key     JSON {"j","a","b"}                       (mode 0600)
//   authority      JSON {"t","a1","b1","issued_b":[...]}    (mode 0600)
//   plain data     CSV  f0,...,f{d-1},label
//   encrypted data CSV  f0,...,f{d-1},u1,u2,u3  plus a JSON sidecar
//                  {"q","p","g1","g2","h","z","records":[{"x_bar":"v,v,..",
//                   "c_bar":[u1,u2,u3],"expected":{"j":index},"copies"}]}
//   model          JSON {"architecture":"linear"|"mlp","input_dim","hidden",
//                   "blocks","block_width","layers":[{"in","out","weights",
//                   "bias"}]}, weights row-major
//   confused label CSV, one comma-separated vector per line
//
// Group elements and exponents are written as decimal integers. Malformed
// input raises Error(kFormat); filesystem failures raise Error(kIo).

#ifndef LABELCRYPT_IO_H_
#define LABELCRYPT_IO_H_

#include <filesystem>
#include <string>
#include <vector>

#include "labelcrypt/classifier.h"
#include "labelcrypt/dataset.h"
#include "labelcrypt/label_codec.h"
#include "labelcrypt/pke.h"

namespace labelcrypt::io {

std::string FormatGroupParams(const GroupParams& group);
GroupParams ParseGroupParams(const std::string& text);

std::string FormatPublicKey(const PublicKey& pk);
PublicKey ParsePublicKey(const std::string& text);

std::string FormatSecretKey(const SecretKey& sk);
SecretKey ParseSecretKey(const std::string& text);

std::string FormatAuthority(const AuthorityState& authority);
AuthorityState ParseAuthority(const GroupParams& group, const std::string& text);

std::string FormatModel(const ModelParams& model);
ModelParams ParseModel(const std::string& text);

std::string FormatConfusedLabel(const ConfusedLabel& label);
ConfusedLabel ParseConfusedLabel(const std::string& line);

std::string ReadFile(const std::filesystem::path& path);
// `secret` restricts the file to its owner.
void WriteFile(const std::filesystem::path& path, const std::string& contents,
               bool secret = false);

void SavePublicKey(const std::filesystem::path& path, const PublicKey& pk);
PublicKey LoadPublicKey(const std::filesystem::path& path);
void SaveSecretKey(const std::filesystem::path& path, const SecretKey& sk);
SecretKey LoadSecretKey(const std::filesystem::path& path);
void SaveAuthority(const std::filesystem::path& path,
                   const AuthorityState& authority);
AuthorityState LoadAuthority(const std::filesystem::path& path,
                             const GroupParams& group);
void SaveModel(const std::filesystem::path& path, const ModelParams& model);
ModelParams LoadModel(const std::filesystem::path& path);

// Label count is max(label)+1 unless `num_classes` > 0 is given.
LabeledDataset LoadPlainCsv(const std::filesystem::path& path,
                            int num_classes = 0);
void SavePlainCsv(const std::filesystem::path& path,
                  const LabeledDataset& dataset);

// Feature-only CSV (header f0..f{d-1}); a trailing "label" column, if
// present, is ignored.
Matrix LoadFeatureCsv(const std::filesystem::path& path);

std::filesystem::path SidecarPath(const std::filesystem::path& csv_path);
void SaveEncryptedDataset(const std::filesystem::path& csv_path,
                          const EncryptedDataset& dataset);
EncryptedDataset LoadEncryptedDataset(const std::filesystem::path& csv_path);

void SaveConfusedLabels(const std::filesystem::path& path,
                        const std::vector<ConfusedLabel>& labels);
std::vector<ConfusedLabel> LoadConfusedLabels(
    const std::filesystem::path& path);

// A key directory as written by `keygen`: public.json, secret_<j>.json,
// authority.json.
std::filesystem::path PublicKeyPath(const std::filesystem::path& dir);
std::filesystem::path SecretKeyPath(const std::filesystem::path& dir, int id);
std::filesystem::path AuthorityPath(const std::filesystem::path& dir);
// All secret_<j>.json files in `dir`, sorted by id.
std::vector<SecretKey> LoadAllSecretKeys(const std::filesystem::path& dir);

}  // namespace labelcrypt::io

#endif  // LABELCRYPT_IO_H_
