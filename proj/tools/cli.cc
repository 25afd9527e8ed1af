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

#include "cli.h"

#include <filesystem>
#include <fstream>
#include <functional>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "labelcrypt/classifier.h"
#include "labelcrypt/dataset.h"
#include "labelcrypt/deploy.h"
#include "labelcrypt/error.h"
#include "labelcrypt/group.h"
#include "labelcrypt/io.h"
#include "labelcrypt/label_codec.h"
#include "labelcrypt/pke.h"
#include "labelcrypt/verification.h"

namespace labelcrypt::cli {
namespace {

namespace fs = std::filesystem;

struct TrainFlags {
  TrainConfig cfg;

  void Attach(CLI::App* cmd, const std::string& prefix = "") {
    cmd->add_option("--" + prefix + "epochs", cfg.epochs, "Training epochs")
        ->capture_default_str()
        ->check(CLI::NonNegativeNumber);
    cmd->add_option("--" + prefix + "lr", cfg.learning_rate, "SGD learning rate")
        ->capture_default_str()
        ->check(CLI::PositiveNumber);
    cmd->add_option("--" + prefix + "batch", cfg.batch_size, "Mini-batch size")
        ->capture_default_str()
        ->check(CLI::PositiveNumber);
    if (prefix.empty()) {
      cmd->add_option("--hidden", cfg.hidden, "Hidden width (0 = linear)")
          ->capture_default_str();
      cmd->add_option("--init-scale", cfg.init_scale,
                      "Uniform weight init half-width")
          ->capture_default_str()
          ->check(CLI::PositiveNumber);
    }
  }
};

// Settings that give stable desk-scale results on the synthetic blobs.
TrainConfig DefaultTrainConfig() {
  TrainConfig cfg;
  cfg.learning_rate = 0.1;
  cfg.epochs = 120;
  cfg.batch_size = 16;
  cfg.hidden = 32;
  cfg.init_scale = 0.5;
  return cfg;
}

void RequireDistinct(const fs::path& in, const fs::path& out) {
  std::error_code ec;
  if (fs::exists(out) && fs::equivalent(in, out, ec)) {
    throw Error(ErrorCode::kInvalidArgument,
                "output " + out.string() + " would overwrite input " +
                    in.string());
  }
}

std::vector<std::uint64_t> ParseList(const std::string& text) {
  std::vector<std::uint64_t> out;
  std::stringstream ss(text);
  for (std::string item; std::getline(ss, item, ',');) {
    try {
      std::size_t used = 0;
      out.push_back(std::stoull(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw Error(ErrorCode::kInvalidArgument, "bad list entry '" + item + "'");
    }
  }
  if (out.empty()) throw Error(ErrorCode::kInvalidArgument, "empty list");
  return out;
}

class Commands {
 public:
  Commands(std::ostream& out) : out_(out) {}

  void Register(CLI::App& app) {
    AddKeygen(app);
    AddAddUser(app);
    AddGenData(app);
    AddEncrypt(app);
    AddTrain(app);
    AddPredict(app);
    AddDecrypt(app);
    AddVerifyKey(app);
    AddVerifyLeak(app);
    AddAttackSim(app);
    AddEval(app);
    AddQSweep(app);
  }

  // The selected subcommand's body; set during parsing.
  std::function<void()> action;

 private:
  CLI::App* Sub(CLI::App& app, const std::string& name,
                const std::string& help) {
    CLI::App* cmd = app.add_subcommand(name, help);
    cmd->add_option("--seed", seed_, "Random seed")->capture_default_str();
    return cmd;
  }

  void EchoSeed() { out_ << "seed: " << seed_ << "\n"; }

  void AddKeygen(CLI::App& app) {
    auto* cmd = Sub(app, "keygen", "Generate group, public key and P secret keys");
    cmd->add_option("--classes", classes_, "Number of classes")
        ->required()
        ->check(CLI::Range(2, 1 << 22));
    cmd->add_option("--users", users_, "Number of secret keys")
        ->required()
        ->check(CLI::PositiveNumber);
    cmd->add_option("--out", out_dir_, "Key directory")->required();
    cmd->callback([this] {
      action = [this] {
        EchoSeed();
        Rng rng(seed_);
        const GroupParams group = GroupParams::Generate(classes_);
        const KeyGenResult keys = GenerateKeys(group, users_, rng);
        io::SavePublicKey(io::PublicKeyPath(out_dir_), keys.pk);
        for (const SecretKey& sk : keys.keys) {
          io::SaveSecretKey(io::SecretKeyPath(out_dir_, sk.id), sk);
        }
        io::SaveAuthority(io::AuthorityPath(out_dir_), keys.authority);
        out_ << "q=" << group.q() << " p=" << group.p()
             << " g1=" << group.generator().residue << "\n"
             << "wrote " << keys.keys.size() << " secret keys to "
             << out_dir_.string() << "\n";
      };
    });
  }

  void AddAddUser(CLI::App& app) {
    auto* cmd = Sub(app, "add-user", "Issue one more secret key");
    cmd->add_option("--keys", keys_dir_, "Existing key directory")
        ->required()
        ->check(CLI::ExistingDirectory);
    cmd->add_option("--out", out_dir_, "New key directory (copy + new key)")
        ->required();
    cmd->callback([this] {
      action = [this] {
        EchoSeed();
        RequireDistinct(keys_dir_, out_dir_);
        Rng rng(seed_);
        const PublicKey pk = io::LoadPublicKey(io::PublicKeyPath(keys_dir_));
        AuthorityState authority =
            io::LoadAuthority(io::AuthorityPath(keys_dir_), pk.group);
        const std::vector<SecretKey> existing = io::LoadAllSecretKeys(keys_dir_);
        const SecretKey added = AddUser(pk, authority, rng);
        io::SavePublicKey(io::PublicKeyPath(out_dir_), pk);
        for (const SecretKey& sk : existing) {
          io::SaveSecretKey(io::SecretKeyPath(out_dir_, sk.id), sk);
        }
        io::SaveSecretKey(io::SecretKeyPath(out_dir_, added.id), added);
        io::SaveAuthority(io::AuthorityPath(out_dir_), authority);
        out_ << "issued key " << added.id << " into " << out_dir_.string()
             << "\n";
      };
    });
  }

  void AddGenData(CLI::App& app) {
    auto* cmd = Sub(app, "gen-data", "Write synthetic Gaussian-blob datasets");
    cmd->add_option("--classes", blobs_.num_classes)
        ->capture_default_str()
        ->check(CLI::Range(2, 1 << 20));
    cmd->add_option("--per-class", blobs_.per_class)
        ->capture_default_str()
        ->check(CLI::PositiveNumber);
    cmd->add_option("--dim", blobs_.dim)
        ->capture_default_str()
        ->check(CLI::PositiveNumber);
    cmd->add_option("--spacing", blobs_.spacing)->capture_default_str();
    cmd->add_option("--noise", blobs_.noise)
        ->capture_default_str()
        ->check(CLI::PositiveNumber);
    cmd->add_option("--out", out_file_, "Training CSV")->required();
    cmd->add_option("--test-out", test_out_, "Optional held-out CSV");
    cmd->add_option("--test-per-class", test_per_class_)
        ->capture_default_str()
        ->check(CLI::PositiveNumber);
    cmd->callback([this] {
      action = [this] {
        EchoSeed();
        Rng rng(seed_);
        io::SavePlainCsv(out_file_, GenerateBlobs(blobs_, rng));
        out_ << "wrote " << blobs_.num_classes * blobs_.per_class << " rows to "
             << out_file_.string() << "\n";
        if (!test_out_.empty()) {
          BlobSpec test_spec = blobs_;
          test_spec.per_class = test_per_class_;
          io::SavePlainCsv(test_out_, GenerateBlobs(test_spec, rng));
          out_ << "wrote " << blobs_.num_classes * test_per_class_
               << " rows to " << test_out_.string() << "\n";
        }
      };
    });
  }

  void AddEncrypt(CLI::App& app) {
    auto* cmd = Sub(app, "encrypt", "Encrypt the label space of a dataset");
    cmd->add_option("--keys", keys_dir_, "Key directory")
        ->required()
        ->check(CLI::ExistingDirectory);
    cmd->add_option("--data", data_file_, "Plaintext CSV")
        ->required()
        ->check(CLI::ExistingFile);
    cmd->add_option("--out", out_file_, "Encrypted CSV (sidecar written next to it)")
        ->required();
    cmd->add_flag("--inject-verification", inject_,
                  "Add a tracing record built from an ill-formed ciphertext");
    cmd->add_option("--replication", replication_,
                    "Copies of the tracing record (0 = max(1, ceil(1% of N)))")
        ->capture_default_str()
        ->check(CLI::NonNegativeNumber);
    cmd->add_option("--probe", probe_file_,
                    "CSV whose first row is the probe input (default: uniform "
                    "in the feature range)")
        ->check(CLI::ExistingFile);
    cmd->callback([this] {
      action = [this] {
        EchoSeed();
        RequireDistinct(data_file_, out_file_);
        Rng rng(seed_);
        const PublicKey pk = io::LoadPublicKey(io::PublicKeyPath(keys_dir_));
        const LabeledDataset data = io::LoadPlainCsv(data_file_);
        EncryptedDataset enc = EncryptDataset(pk, data, rng);
        if (inject_) {
          const std::vector<SecretKey> keys = io::LoadAllSecretKeys(keys_dir_);
          std::vector<double> probe;
          if (!probe_file_.empty()) {
            const Matrix rows = io::LoadFeatureCsv(probe_file_);
            if (rows.rows == 0) {
              throw Error(ErrorCode::kFormat, "probe file has no rows");
            }
            auto first = rows.row(0);
            probe.assign(first.begin(), first.end());
          } else {
            probe = UniformProbe(data.features, rng);
          }
          const int copies =
              replication_ > 0 ? replication_ : DefaultReplication(data.size());
          enc = Inject(enc, MakeVerificationRecord(pk, keys, probe, rng), copies);
          out_ << "injected tracing record x" << copies << "\n";
        }
        io::SaveEncryptedDataset(out_file_, enc);
        out_ << "wrote " << enc.size() << " rows to " << out_file_.string()
             << "\n";
      };
    });
  }

  void AddTrain(CLI::App& app) {
    auto* cmd = Sub(app, "train", "Train a classifier on confused labels");
    cmd->add_option("--data", data_file_,
                    "Encrypted CSV (or plaintext CSV with --baseline)")
        ->required()
        ->check(CLI::ExistingFile);
    cmd->add_option("--out", out_file_, "Model file")->required();
    cmd->add_option("--init", model_file_, "Warm-start from this model")
        ->check(CLI::ExistingFile);
    cmd->add_flag("--baseline", baseline_,
                  "Train a plaintext single-softmax model instead");
    train_.Attach(cmd);
    cmd->callback([this] {
      action = [this] {
        EchoSeed();
        RequireDistinct(data_file_, out_file_);
        TrainConfig cfg = train_.cfg;
        cfg.seed = seed_;
        TrainResult result;
        if (baseline_) {
          const LabeledDataset data = io::LoadPlainCsv(data_file_);
          result = model_file_.empty()
                       ? TrainBaseline(data, cfg)
                       : Fit(io::LoadModel(model_file_), data.features,
                             OneHotTargets(data), cfg);
        } else {
          const EncryptedDataset data = io::LoadEncryptedDataset(data_file_);
          result = model_file_.empty()
                       ? Train(data, cfg)
                       : Fit(io::LoadModel(model_file_), data.features,
                             ConfusedTargets(data), cfg);
        }
        io::SaveModel(out_file_, result.model);
        for (std::size_t e = 0; e < result.epoch_losses.size(); ++e) {
          out_ << "epoch " << e + 1 << " loss " << result.epoch_losses[e]
               << "\n";
        }
        out_ << "wrote model to " << out_file_.string() << "\n";
      };
    });
  }

  void AddPredict(CLI::App& app) {
    auto* cmd = Sub(app, "predict", "Emit confused labels (or decrypt them with --key)");
    cmd->add_option("--model", model_file_)->required()->check(CLI::ExistingFile);
    cmd->add_option("--pk", pk_file_, "Public key file")
        ->required()
        ->check(CLI::ExistingFile);
    cmd->add_option("--data", data_file_, "Feature CSV")
        ->required()
        ->check(CLI::ExistingFile);
    cmd->add_option("--classes", classes_, "Class count (needed with --key)");
    cmd->add_option("--key", key_file_, "Decrypt with this secret key")
        ->check(CLI::ExistingFile);
    cmd->add_option("--out", out_file_)->required();
    cmd->callback([this] {
      action = [this] {
        EchoSeed();
        RequireDistinct(data_file_, out_file_);
        Rng rng(seed_);
        const PublicKey pk = io::LoadPublicKey(pk_file_);
        const int z = key_file_.empty() ? 2 : RequireClasses(pk.group);
        const DeploymentHandle handle(io::LoadModel(model_file_), pk, z);
        const Matrix x = io::LoadFeatureCsv(data_file_);
        std::vector<ConfusedLabel> emitted;
        for (std::size_t i = 0; i < x.rows; ++i) {
          emitted.push_back(DeployPredict(handle, x.row(i), rng));
        }
        if (key_file_.empty()) {
          io::SaveConfusedLabels(out_file_, emitted);
        } else {
          const SecretKey sk = io::LoadSecretKey(key_file_);
          io::WriteFile(out_file_, DecryptAll(handle.encoding(), sk, emitted));
        }
        out_ << "wrote " << emitted.size() << " predictions to "
             << out_file_.string() << "\n";
      };
    });
  }

  void AddDecrypt(CLI::App& app) {
    auto* cmd = Sub(app, "decrypt", "Decrypt confused labels with a secret key");
    cmd->add_option("--key", key_file_)->required()->check(CLI::ExistingFile);
    cmd->add_option("--pk", pk_file_)->required()->check(CLI::ExistingFile);
    cmd->add_option("--input", data_file_, "Confused-label CSV")
        ->required()
        ->check(CLI::ExistingFile);
    cmd->add_option("--classes", classes_)->required();
    cmd->add_option("--out", out_file_)->required();
    cmd->callback([this] {
      action = [this] {
        EchoSeed();
        RequireDistinct(data_file_, out_file_);
        const PublicKey pk = io::LoadPublicKey(pk_file_);
        const LabelEncoding encoding(pk.group, RequireClasses(pk.group));
        const SecretKey sk = io::LoadSecretKey(key_file_);
        const auto labels = io::LoadConfusedLabels(data_file_);
        io::WriteFile(out_file_, DecryptAll(encoding, sk, labels));
        out_ << "decrypted " << labels.size() << " labels\n";
      };
    });
  }

  void AddVerifyKey(CLI::App& app) {
    auto* cmd = Sub(app, "verify-key", "Check whether a key is an issued key");
    cmd->add_option("--keys", keys_dir_, "Arbitrator key directory")
        ->required()
        ->check(CLI::ExistingDirectory);
    cmd->add_option("--key", key_file_)->required()->check(CLI::ExistingFile);
    cmd->callback([this] {
      action = [this] {
        EchoSeed();
        const PublicKey pk = io::LoadPublicKey(io::PublicKeyPath(keys_dir_));
        const ArbitrationContext ctx{pk, 0, io::LoadAllSecretKeys(keys_dir_), {}};
        const std::optional<int> id =
            VerifyKey(ctx, io::LoadSecretKey(key_file_));
        if (id) {
          out_ << "authorized key " << *id << "\n";
        } else {
          out_ << "NotAuthorized\n";
        }
      };
    });
  }

  void AddVerifyLeak(CLI::App& app) {
    auto* cmd = Sub(app, "verify-leak",
                    "Repeated tracing experiment: inject, train, leak, identify");
    cmd->add_option("--keys", keys_dir_)->required()->check(CLI::ExistingDirectory);
    cmd->add_option("--data", data_file_, "Plaintext training CSV")
        ->required()
        ->check(CLI::ExistingFile);
    cmd->add_option("--trials", trials_)->capture_default_str()->check(
        CLI::PositiveNumber);
    cmd->add_option("--replication", replication_)
        ->capture_default_str()
        ->check(CLI::NonNegativeNumber);
    cmd->add_option("--report", out_file_, "Write the per-trial report here");
    train_.Attach(cmd);
    cmd->callback([this] {
      action = [this] {
        EchoSeed();
        Rng rng(seed_);
        const PublicKey pk = io::LoadPublicKey(io::PublicKeyPath(keys_dir_));
        const std::vector<SecretKey> keys = io::LoadAllSecretKeys(keys_dir_);
        TracingOptions options;
        options.trials = trials_;
        options.replication = replication_;
        options.train = train_.cfg;
        options.train.seed = seed_;
        const TracingReport report = RunTracingTrials(
            pk, keys, io::LoadPlainCsv(data_file_), options, rng);
        std::ostringstream text;
        WriteTracingReport(report, text);
        if (!out_file_.empty()) io::WriteFile(out_file_, text.str());
        out_ << text.str();
      };
    });
  }

  void AddAttackSim(CLI::App& app) {
    auto* cmd = Sub(app, "attack-sim", "Sequential fine-tuning removal attack");
    cmd->add_option("--keys", keys_dir_)->required()->check(CLI::ExistingDirectory);
    cmd->add_option("--data", data_file_, "Plaintext training CSV")
        ->required()
        ->check(CLI::ExistingFile);
    cmd->add_option("--test", test_file_, "Plaintext evaluation CSV")
        ->required()
        ->check(CLI::ExistingFile);
    cmd->add_option("--parts", parts_)->capture_default_str()->check(
        CLI::PositiveNumber);
    cmd->add_option("--replication", replication_)
        ->capture_default_str()
        ->check(CLI::NonNegativeNumber);
    cmd->add_option("--report", out_file_);
    train_.Attach(cmd);
    finetune_.Attach(cmd, "ft-");
    cmd->callback([this] {
      action = [this] {
        EchoSeed();
        Rng rng(seed_);
        const PublicKey pk = io::LoadPublicKey(io::PublicKeyPath(keys_dir_));
        const std::vector<SecretKey> keys = io::LoadAllSecretKeys(keys_dir_);
        const LabeledDataset train = io::LoadPlainCsv(data_file_);
        const LabeledDataset test =
            io::LoadPlainCsv(test_file_, train.num_classes);
        EncryptedDataset enc = EncryptDataset(pk, train, rng);
        const int copies =
            replication_ > 0 ? replication_ : DefaultReplication(train.size());
        enc = Inject(enc,
                     MakeVerificationRecord(
                         pk, keys, UniformProbe(train.features, rng), rng),
                     copies);
        TrainConfig cfg = train_.cfg;
        cfg.seed = seed_;
        ModelParams model = Train(enc, cfg).model;
        TrainConfig ft = finetune_.cfg;
        ft.hidden = cfg.hidden;
        ft.init_scale = cfg.init_scale;
        ft.seed = seed_ + 1000;
        const ArbitrationContext ctx{pk, train.num_classes, keys, enc.records};
        const AttackReport report =
            FinetuneAttack(ctx, std::move(model), enc, parts_, ft, test, rng);
        std::ostringstream text;
        WriteAttackReport(report, text);
        if (!out_file_.empty()) io::WriteFile(out_file_, text.str());
        out_ << text.str();
      };
    });
  }

  void AddEval(CLI::App& app) {
    auto* cmd = Sub(app, "eval", "Accuracy of a deployed or baseline model");
    cmd->add_option("--model", model_file_)->required()->check(CLI::ExistingFile);
    cmd->add_option("--data", data_file_, "Plaintext evaluation CSV")
        ->required()
        ->check(CLI::ExistingFile);
    cmd->add_option("--pk", pk_file_)->check(CLI::ExistingFile);
    cmd->add_option("--key", key_file_)->check(CLI::ExistingFile);
    cmd->add_option("--classes", classes_, "Class count (default: from data)");
    cmd->add_flag("--baseline", baseline_, "Evaluate a plaintext baseline model");
    cmd->callback([this] {
      action = [this] {
        EchoSeed();
        Rng rng(seed_);
        const ModelParams model = io::LoadModel(model_file_);
        if (baseline_) {
          const LabeledDataset data = io::LoadPlainCsv(
              data_file_, classes_ > 0 ? classes_ : model.blocks == 1
                                                        ? static_cast<int>(model.block_width)
                                                        : 0);
          out_ << "accuracy " << EvaluateBaseline(model, data) << "\n";
          return;
        }
        if (pk_file_.empty() || key_file_.empty()) {
          throw CLI::ValidationError("eval needs --pk and --key, or --baseline");
        }
        const LabeledDataset data = io::LoadPlainCsv(data_file_, classes_);
        const DeploymentHandle handle(model, io::LoadPublicKey(pk_file_),
                                      data.num_classes);
        out_ << "accuracy "
             << Evaluate(handle, data, io::LoadSecretKey(key_file_), rng) << "\n";
      };
    });
  }

  void AddQSweep(CLI::App& app) {
    auto* cmd = Sub(app, "q-sweep", "Correct-key accuracy across group orders");
    cmd->add_option("--values", q_values_, "Comma-separated q values")
        ->required();
    cmd->add_option("--data", data_file_)->required()->check(CLI::ExistingFile);
    cmd->add_option("--test", test_file_)->required()->check(CLI::ExistingFile);
    cmd->add_option("--users", users_)->capture_default_str()->check(
        CLI::PositiveNumber);
    train_.Attach(cmd);
    cmd->callback([this] {
      action = [this] {
        EchoSeed();
        const LabeledDataset train = io::LoadPlainCsv(data_file_);
        const LabeledDataset test = io::LoadPlainCsv(test_file_, train.num_classes);
        TrainConfig cfg = train_.cfg;
        cfg.seed = seed_;
        out_ << "q,accuracy\n";
        for (std::uint64_t q : ParseList(q_values_)) {
          Rng rng(seed_);
          const GroupParams group = GroupParams::Generate(q);
          const KeyGenResult keys = GenerateKeys(group, users_, rng);
          const EncryptedDataset enc = EncryptDataset(keys.pk, train, rng);
          const DeploymentHandle handle(Train(enc, cfg).model, keys.pk,
                                        train.num_classes);
          out_ << group.q() << ","
               << Evaluate(handle, test, keys.keys.front(), rng) << "\n";
        }
        out_ << "baseline," << EvaluateBaseline(TrainBaseline(train, cfg).model, test)
             << "\n";
      };
    });
  }

  int RequireClasses(const GroupParams& group) {
    if (classes_ < 2 || static_cast<std::uint64_t>(classes_) > group.q()) {
      throw CLI::ValidationError("--classes must be in [2, q]");
    }
    return classes_;
  }

  static std::string DecryptAll(const LabelEncoding& encoding,
                                const SecretKey& sk,
                                const std::vector<ConfusedLabel>& labels) {
    std::string text;
    for (const ConfusedLabel& v : labels) {
      const std::optional<int> y = UserDecrypt(encoding, sk, v.values);
      text += y ? std::to_string(*y) : std::string("invalid");
      text += "\n";
    }
    return text;
  }

  std::ostream& out_;
  std::uint64_t seed_ = 0;
  int classes_ = 0;
  int users_ = 3;
  int trials_ = 30;
  int parts_ = 5;
  int replication_ = 0;
  int test_per_class_ = 100;
  bool inject_ = false;
  bool baseline_ = false;
  BlobSpec blobs_;
  TrainFlags train_{DefaultTrainConfig()};
  TrainFlags finetune_{[] {
    TrainConfig cfg = DefaultTrainConfig();
    cfg.epochs = 10;
    cfg.learning_rate = 0.02;
    return cfg;
  }()};
  std::string q_values_;
  fs::path keys_dir_;
  fs::path out_dir_;
  fs::path out_file_;
  fs::path test_out_;
  fs::path data_file_;
  fs::path test_file_;
  fs::path model_file_;
  fs::path pk_file_;
  fs::path key_file_;
  fs::path probe_file_;
};

}  // namespace

int Run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"labelcrypt: label-space encryption for model ownership tracing"};
  app.name("labelcrypt");
  app.require_subcommand(1);
  Commands commands(out);
  commands.Register(app);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    if (commands.action) commands.action();
  } catch (const CLI::ValidationError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return e.code() == ErrorCode::kInvalidArgument ? kExitUsage : kExitRuntime;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
  return kExitOk;
}

}  // namespace labelcrypt::cli
