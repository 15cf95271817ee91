#pragma once

#include <CLI11.hpp>

#include <cmath>
#include <cstdint>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "moddiv/bench.hpp"
#include "moddiv/entropy.hpp"
#include "moddiv/errors.hpp"
#include "moddiv/hardness/anf.hpp"
#include "moddiv/hardness/bruteforce.hpp"
#include "moddiv/hardness/cnf.hpp"
#include "moddiv/keys.hpp"
#include "moddiv/kex.hpp"
#include "moddiv/params.hpp"
#include "moddiv/pke.hpp"
#include "moddiv/sig.hpp"

namespace moddiv::app {

enum ExitCode : int { kOk = 0, kUsage = 1, kValidation = 2, kRejected = 3 };

class IoError : public Error {
public:
  using Error::Error;
};

class UsageError : public Error {
public:
  using Error::Error;
};

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "' for reading");
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

inline void write_file(const std::string& path, std::string_view data) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out || !out.write(data.data(), static_cast<std::streamsize>(data.size())))
    throw IoError("cannot write '" + path + "'");
}

inline std::vector<std::uint8_t> to_vec(const std::string& s) { return {s.begin(), s.end()}; }

namespace detail {

struct ParamFlags {
  std::int64_t l = 0, m = 0, p = 0, r = 0;
  std::optional<std::int64_t> q;
  std::string variant = "kexenc";

  void add(CLI::App* cmd, bool with_variant, bool required = true) {
    auto* ol = cmd->add_option("--l", l, "bit length of Z");
    auto* om = cmd->add_option("--m", m, "bit length of the private values");
    auto* op = cmd->add_option("--p", p, "upper window bound");
    cmd->add_option("--q", q, "lower window bound (default l + m - p)");
    cmd->add_option("--r", r, "slack bits")->default_val(0);
    if (with_variant) cmd->add_option("--variant", variant, "kexenc or sig")->default_val("kexenc");
    if (required) {
      ol->required();
      om->required();
      op->required();
    }
  }

  template <EntropySource R>
  ParamSet generate(R& rng, Variant v) const {
    if (q && *q != l + m - p) {
      throw ParamError(std::vector<std::string>{"Condition (q = l + m - p) is not fulfilled !"});
    }
    return generate_params(l, m, p, r, v, rng);
  }
};

struct SeedFlags {
  std::optional<std::uint64_t> seed;
  bool insecure = false;

  void add(CLI::App* cmd, bool key_generating) {
    cmd->add_option("--seed", seed, key_generating ? "deterministic seed (requires --insecure-seed)"
                                                   : "deterministic seed");
    if (key_generating) cmd->add_flag("--insecure-seed", insecure, "allow --seed for key material");
    key_generating_ = key_generating;
  }

  /// Calls f with OsEntropy, or with a SeededDrbg when --seed is given.
  template <class F>
  decltype(auto) with_rng(F&& f) const {
    if (seed) {
      if (key_generating_ && !insecure)
        throw UsageError("--seed produces predictable keys; pass --insecure-seed to allow it");
      SeededDrbg rng(*seed);
      return f(rng);
    }
    OsEntropy rng;
    return f(rng);
  }

private:
  bool key_generating_ = false;
};

struct InstanceFlags {
  std::string pub;
  std::string a, u;
  std::uint64_t m = 0, p = 0, q = 0;

  void add(CLI::App* cmd) {
    cmd->add_option("--pub", pub, "public key file (a = Z, n = l, u = U)");
    cmd->add_option("--a", a, "multiplier (decimal or 0x hex)");
    cmd->add_option("--m", m, "bit length of the unknown x");
    cmd->add_option("--p", p, "upper window bound");
    cmd->add_option("--q", q, "lower window bound");
    cmd->add_option("--u", u, "observed window value (decimal or 0x hex)");
  }

  hardness::InversionInstance resolve() const {
    if (!pub.empty()) return hardness::instance_from_public_key(parse_public_key(read_file(pub)));
    if (a.empty() || u.empty() || m == 0 || p == 0)
      throw UsageError("give either --pub or all of --a --m --p --q --u");
    return hardness::make_instance(parse_nat(a), m, p, q, parse_nat(u));
  }
};

inline void emit(std::ostream& out, const std::string& path, const std::string& data) {
  if (path.empty()) out << data;
  else write_file(path, data);
}

inline std::vector<BitCount> parse_widths(const std::string& text) {
  std::vector<BitCount> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(parse_decimal("widths", item));
  if (out.empty()) throw UsageError("--widths must list at least one width");
  return out;
}

}  // namespace detail

/// Entry point of the `moddiv` tool. Exit codes: 0 success, 1 usage or file
/// error, 2 validation error, 3 signature rejected.
inline int cli_main(int argc, const char* const* argv, std::ostream& out = std::cout,
                    std::ostream& err = std::cerr) {
  CLI::App app{"ModDiv public-key toolkit: key exchange, encryption, signatures and hardness instances"};
  app.require_subcommand(1);

  // params-gen
  detail::ParamFlags pg_params;
  detail::SeedFlags pg_seed;
  std::string pg_out;
  auto* params_gen = app.add_subcommand("params-gen", "generate public parameters (samples Z)");
  pg_params.add(params_gen, true);
  pg_seed.add(params_gen, true);
  params_gen->add_option("--out", pg_out, "output file (default stdout)");

  // keygen
  detail::ParamFlags kg_params;
  detail::SeedFlags kg_seed;
  std::string kg_params_file, kg_out, kg_pub;
  auto* keygen = app.add_subcommand("keygen", "generate a key pair");
  keygen->add_option("--params", kg_params_file, "parameter file from params-gen");
  kg_params.add(keygen, true, false);
  kg_seed.add(keygen, true);
  keygen->add_option("--out", kg_out, "private key file (contains X)")->required();
  keygen->add_option("--pub", kg_pub, "public key file (default <out>.pub)");

  // kex-demo
  detail::ParamFlags kd_params;
  detail::SeedFlags kd_seed;
  auto* kex_demo = app.add_subcommand("kex-demo", "run one key exchange and print every value");
  kd_params.add(kex_demo, false);
  kd_seed.add(kex_demo, false);

  // encrypt / decrypt
  detail::SeedFlags enc_seed;
  std::string enc_pub, enc_in, enc_out;
  auto* encrypt = app.add_subcommand("encrypt", "encrypt a file to a public key");
  encrypt->add_option("--pub", enc_pub, "recipient public key")->required();
  encrypt->add_option("--in", enc_in, "plaintext file")->required();
  encrypt->add_option("--out", enc_out, "ciphertext file (default stdout)");
  enc_seed.add(encrypt, true);

  std::string dec_key, dec_in, dec_out;
  auto* decrypt = app.add_subcommand("decrypt", "decrypt a ciphertext file");
  decrypt->add_option("--key", dec_key, "private key")->required();
  decrypt->add_option("--in", dec_in, "ciphertext file")->required();
  decrypt->add_option("--out", dec_out, "plaintext file (default stdout)");

  // sign / verify
  detail::SeedFlags sg_seed;
  std::string sg_key, sg_in, sg_out;
  auto* sign = app.add_subcommand("sign", "write a detached signature");
  sign->add_option("--key", sg_key, "private key (sig variant)")->required();
  sign->add_option("--in", sg_in, "message file")->required();
  sign->add_option("--out", sg_out, "signature file (default stdout)");
  sg_seed.add(sign, true);

  std::string vf_pub, vf_in, vf_sig;
  unsigned vf_tolerance = 0;
  auto* verify = app.add_subcommand("verify", "check a detached signature (exit 3 on reject)");
  verify->add_option("--pub", vf_pub, "signer public key")->required();
  verify->add_option("--in", vf_in, "message file")->required();
  verify->add_option("--sig", vf_sig, "signature file")->required();
  verify->add_option("--tolerance", vf_tolerance, "accept |Wa - Wb| <= N (experimental; default strict)")
      ->default_val(0);

  // hardness
  detail::InstanceFlags sat_inst, anf_inst, bf_inst;
  std::string sat_out, anf_out;
  BitCount anf_max_vars = 16;
  auto* export_sat = app.add_subcommand("export-sat", "write the inversion instance as DIMACS CNF");
  sat_inst.add(export_sat);
  export_sat->add_option("--out", sat_out, "output file (default stdout)");
  auto* export_anf = app.add_subcommand("export-anf", "write the inversion instance as an ANF system over F(2)");
  anf_inst.add(export_anf);
  export_anf->add_option("--out", anf_out, "output file (default stdout)");
  export_anf->add_option("--max-vars", anf_max_vars, "expansion guard on m")->default_val(16);
  auto* bruteforce = app.add_subcommand("bruteforce", "enumerate every x solving the instance (m <= 28)");
  bf_inst.add(bruteforce);

  std::string st_in;
  auto* stats = app.add_subcommand("stats", "variable/clause statistics of a DIMACS file");
  stats->add_option("--in", st_in, "DIMACS file")->required();

  // prob-test / bench
  detail::ParamFlags pt_params;
  detail::SeedFlags pt_seed;
  std::uint64_t pt_trials = 10000;
  auto* prob_test = app.add_subcommand("prob-test", "measure how often Wa != Wb");
  pt_params.add(prob_test, false);
  pt_seed.add(prob_test, false);
  prob_test->add_option("--trials", pt_trials, "number of exchanges")->default_val(10000);

  std::string bn_widths = "512,1024,2048,4096";
  std::size_t bn_repeats = 7;
  detail::SeedFlags bn_seed;
  auto* bench = app.add_subcommand("bench", "time moddiv derivation against modular exponentiation");
  bench->add_option("--widths", bn_widths, "comma-separated operand widths in bits")
      ->default_val("512,1024,2048,4096");
  bench->add_option("--repeats", bn_repeats, "samples per timing (median reported)")->default_val(7);
  bn_seed.add(bench, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (params_gen->parsed()) {
      auto ps = pg_seed.with_rng([&](auto& rng) { return pg_params.generate(rng, parse_variant(pg_params.variant)); });
      detail::emit(out, pg_out, serialize(ps));
    } else if (keygen->parsed()) {
      auto kp = kg_seed.with_rng([&](auto& rng) {
        ParamSet ps;
        if (!kg_params_file.empty()) ps = parse_params(read_file(kg_params_file));
        else if (kg_params.l && kg_params.m && kg_params.p)
          ps = kg_params.generate(rng, parse_variant(kg_params.variant));
        else throw UsageError("keygen needs --params or --l --m --p");
        return generate_keypair(ps, rng);
      });
      write_file(kg_out, serialize(kp));
      write_file(kg_pub.empty() ? kg_out + ".pub" : kg_pub, serialize(kp.public_part()));
    } else if (kex_demo->parsed()) {
      kd_seed.with_rng([&](auto& rng) {
        auto ps = kd_params.generate(rng, Variant::KexEnc);
        Nat x = kex::kex_gen_private(ps, rng);
        Nat y = kex::kex_gen_private(ps, rng);
        auto u = kex::kex_share(ps, x);
        auto v = kex::kex_share(ps, y);
        auto wa = kex::kex_derive(ps, x, v);
        auto wb = kex::kex_derive(ps, y, u);
        out << serialize(ps) << "X=" << to_hex(x) << "\nY=" << to_hex(y) << "\nU=" << to_hex(u.value)
            << "\nV=" << to_hex(v.value) << "\nWa=" << to_hex(wa.value) << "\nWb=" << to_hex(wb.value)
            << "\nagree=" << (wa == wb ? "yes" : "no") << '\n';
        if (ps.slack < 128) err << "note: r < 128, Wa and Wb may differ by one carry\n";
        return 0;
      });
    } else if (encrypt->parsed()) {
      auto pub = parse_public_key(read_file(enc_pub));
      auto pt = to_vec(read_file(enc_in));
      auto ct = enc_seed.with_rng([&](auto& rng) { return pke::encrypt(pub, pt, rng); });
      detail::emit(out, enc_out, pke::serialize(ct));
    } else if (decrypt->parsed()) {
      auto kp = parse_key_pair(read_file(dec_key));
      auto ct = pke::parse_ciphertext(read_file(dec_in));
      auto pt = pke::decrypt(kp, ct);
      detail::emit(out, dec_out, std::string(pt.begin(), pt.end()));
    } else if (sign->parsed()) {
      auto kp = parse_key_pair(read_file(sg_key));
      auto msg = to_vec(read_file(sg_in));
      auto s = sg_seed.with_rng([&](auto& rng) { return sig::sign(kp, msg, rng); });
      detail::emit(out, sg_out, sig::serialize(s));
    } else if (verify->parsed()) {
      auto pub = parse_public_key(read_file(vf_pub));
      auto msg = to_vec(read_file(vf_in));
      auto s = sig::parse_signature(read_file(vf_sig));
      auto verdict = sig::verify(pub, msg, s, vf_tolerance);
      if (verdict.outcome == sig::Outcome::OutOfRange) {
        err << "reject: S1 or S2 does not fit in p - q bits\n";
        return kRejected;
      }
      out << "Wa=" << to_hex(verdict.wa) << "\nWb=" << to_hex(verdict.wb) << '\n';
      out << (verdict.accepted() ? "accept" : "reject") << '\n';
      return verdict.accepted() ? kOk : kRejected;
    } else if (export_sat->parsed()) {
      detail::emit(out, sat_out, hardness::write_dimacs(hardness::export_cnf(sat_inst.resolve())));
    } else if (export_anf->parsed()) {
      hardness::AnfLimits limits;
      limits.max_vars = anf_max_vars;
      detail::emit(out, anf_out, hardness::write_anf(hardness::export_anf(anf_inst.resolve(), limits)));
    } else if (bruteforce->parsed()) {
      auto sols = hardness::brute_force_invert(bf_inst.resolve());
      out << "solutions=" << sols.size() << '\n';
      for (const auto& x : sols) out << "x=" << to_hex(x) << '\n';
    } else if (stats->parsed()) {
      auto s = hardness::instance_stats(hardness::parse_dimacs(read_file(st_in)));
      out << "vars=" << s.vars << "\nclauses=" << s.clauses << "\nratio=" << std::setprecision(6) << s.ratio
          << "\nxor_chain_count=" << s.xor_chain_count << '\n';
    } else if (prob_test->parsed()) {
      pt_seed.with_rng([&](auto& rng) {
        auto ps = pt_params.generate(rng, Variant::KexEnc);
        auto st = kex::agreement_experiment(ps, pt_trials, rng);
        out << "trials=" << st.trials << "\nmismatches=" << st.mismatches << "\nmismatch_rate=" << std::setprecision(6)
            << st.mismatch_rate() << "\nmax_abs_diff=" << st.max_abs_diff.get_str(10)
            << "\nmax_cyclic_diff=" << st.max_cyclic_diff.get_str(10)
            << "\nreference_rate=" << 0.3 * std::ldexp(1.0, -static_cast<int>(ps.slack)) << '\n';
        return 0;
      });
    } else if (bench->parsed()) {
      auto widths = detail::parse_widths(bn_widths);
      auto report = bn_seed.with_rng([&](auto& rng) { return bench::bench_run(widths, bn_repeats, rng); });
      out << "width share_ns derive_ns modexp_ns speedup modexp_mults\n";
      for (const auto& row : report.rows)
        out << row.width << ' ' << std::fixed << std::setprecision(1) << row.share_ns << ' ' << row.derive_ns << ' '
            << row.modexp_ns << ' ' << row.speedup() << ' ' << row.modexp_mults << '\n';
    }
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const IoError& e) {
    err << "file error: " << e.what() << '\n';
    return kUsage;
  } catch (const ParamError& e) {
    err << "parameter error:\n" << e.what() << '\n';
    return kValidation;
  } catch (const FormatError& e) {
    err << "format error: " << e.what() << '\n';
    return kValidation;
  } catch (const RangeError& e) {
    err << "range error: " << e.what() << '\n';
    return kValidation;
  } catch (const GuardError& e) {
    err << "size limit: " << e.what() << '\n';
    return kValidation;
  }
  return kOk;
}

}  // namespace moddiv::app
