#include "snzlab/json_io.hpp"

#include <algorithm>

namespace snzlab::io {

namespace {

json bigint_array(const std::vector<BigInt>& values) {
  json arr = json::array();
  for (const BigInt& v : values) arr.push_back(to_decimal(v));
  return arr;
}

BigInt bigint_field(const json& value, const char* what) {
  if (value.is_number_integer()) {
    return BigInt(value.get<long long>());
  }
  if (value.is_string()) {
    try {
      return bigint_from_decimal(value.get<std::string>());
    } catch (const InvalidInput& err) {
      throw InvalidInput(std::string(what) + ": " + err.what());
    }
  }
  throw InvalidInput(std::string(what) + " must be an integer or decimal string");
}

}  // namespace

json clopen_to_json(const ClopenSet& set) {
  json doc;
  doc["schema"] = kSchemaTag;
  doc["support"] = set.support();
  json patterns = json::array();
  for (Pattern m : set.patterns()) {
    std::string bits(set.support().size(), '0');
    for (std::size_t i = 0; i < set.support().size(); ++i) {
      if ((m >> i) & 1) bits[i] = '1';
    }
    patterns.push_back(bits);
  }
  doc["patterns"] = std::move(patterns);
  return doc;
}

json pseq_to_json(const PSequence& p) {
  json doc;
  doc["schema"] = kSchemaTag;
  doc["p"] = bigint_array(p.terms());
  if (p.provenance.has_value()) {
    json prov;
    prov["kind"] = p.provenance->kind;
    if (p.provenance->kind == "greedy-minimal") {
      prov["horizon"] = p.provenance->horizon;
      prov["tie_policy"] = p.provenance->tie_policy;
      prov["strategy"] = p.provenance->strategy;
    }
    doc["provenance"] = std::move(prov);
  }
  return doc;
}

PSequence pseq_from_json(const json& doc) {
  if (!doc.is_object() || !doc.contains("p") || !doc["p"].is_array()) {
    throw InvalidInput("p-sequence document needs an array field \"p\"");
  }
  std::vector<BigInt> terms;
  terms.reserve(doc["p"].size());
  for (const json& entry : doc["p"]) {
    terms.push_back(bigint_field(entry, "p entry"));
  }
  PSequence p(std::move(terms));
  if (doc.contains("provenance") && doc["provenance"].is_object()) {
    const json& src = doc["provenance"];
    PSequenceProvenance prov;
    prov.kind = src.value("kind", std::string("explicit"));
    prov.horizon = src.value("horizon", std::size_t(0));
    prov.tie_policy = src.value("tie_policy", std::string());
    prov.strategy = src.value("strategy", std::string());
    p.provenance = prov;
  }
  return p;
}

json counterexample_to_json(const Counterexample& ce) {
  json doc;
  doc["t"] = ce.t;
  doc["w"] = bigint_array(ce.w);
  doc["sum"] = to_decimal(ce.sum);
  return doc;
}

json certificate_to_json(const SnzCertificate& cert) {
  json doc;
  doc["schema"] = kSchemaTag;
  doc["p_digest"] = cert.p_digest;
  json levels = json::array();
  for (const LevelReport& level : cert.levels) {
    json entry;
    entry["t"] = level.t;
    entry["verdict"] = to_string(level.verdict);
    if (!level.note.empty()) entry["note"] = level.note;
    levels.push_back(std::move(entry));
  }
  doc["levels"] = std::move(levels);
  doc["counterexample"] = cert.counterexample.has_value()
                              ? counterexample_to_json(*cert.counterexample)
                              : json(nullptr);
  doc["strategy"] = cert.strategy;
  doc["ms"] = cert.ms;
  return doc;
}

SnzCertificate certificate_from_json(const json& doc) {
  if (!doc.is_object()) throw InvalidInput("certificate must be a JSON object");
  for (const char* field : {"p_digest", "levels", "strategy", "ms"}) {
    if (!doc.contains(field)) {
      throw InvalidInput(std::string("certificate lacks field \"") + field + "\"");
    }
  }
  SnzCertificate cert;
  cert.p_digest = doc["p_digest"].get<std::string>();
  cert.strategy = doc["strategy"].get<std::string>();
  cert.ms = doc["ms"].get<std::uint64_t>();
  for (const json& entry : doc["levels"]) {
    LevelReport level;
    level.t = entry.at("t").get<std::size_t>();
    const std::string verdict = entry.at("verdict").get<std::string>();
    if (verdict == "ok") {
      level.verdict = Verdict::ok;
    } else if (verdict == "counterexample") {
      level.verdict = Verdict::counterexample;
    } else if (verdict == "indeterminate") {
      level.verdict = Verdict::indeterminate;
    } else {
      throw InvalidInput("unknown level verdict '" + verdict + "'");
    }
    if (entry.contains("note")) level.note = entry["note"].get<std::string>();
    cert.levels.push_back(std::move(level));
  }
  if (doc.contains("counterexample") && !doc["counterexample"].is_null()) {
    const json& ce_doc = doc["counterexample"];
    Counterexample ce;
    ce.t = ce_doc.at("t").get<std::size_t>();
    for (const json& v : ce_doc.at("w")) ce.w.push_back(bigint_field(v, "w entry"));
    ce.sum = bigint_field(ce_doc.at("sum"), "sum");
    cert.counterexample = std::move(ce);
  }
  return cert;
}

json growth_report_to_json(const GrowthReport& report) {
  json doc;
  doc["schema"] = kSchemaTag;
  doc["growth"] = report.growth_name;
  doc["all_ok"] = report.all_ok();
  json entries = json::array();
  for (const GrowthEntry& e : report.entries) {
    json entry;
    entry["k"] = e.k;
    entry["ok"] = e.ok;
    entry["actual_bits"] = e.actual_bits;
    entry["required_bits"] = to_decimal(e.required_bits);
    entry["materializable"] = e.materializable;
    if (!e.note.empty()) entry["note"] = e.note;
    entries.push_back(std::move(entry));
  }
  doc["entries"] = std::move(entries);
  return doc;
}

json check_report_to_json(const CheckReport& report) {
  json doc;
  doc["schema"] = kSchemaTag;
  doc["all_ok"] = report.all_ok();
  json entries = json::array();
  for (const CheckEntry& e : report.entries) {
    json entry;
    entry["check"] = e.check;
    entry["params"] = e.params;
    entry["verdict"] = e.ok ? "ok" : "violation";
    entry["margin"] = e.margin;
    if (!e.note.empty()) entry["note"] = e.note;
    entries.push_back(std::move(entry));
  }
  doc["entries"] = std::move(entries);
  return doc;
}

json evens_witness_to_json(const EvensWitness& witness) {
  json doc;
  doc["schema"] = kSchemaTag;
  doc["assumed_even_charge"] = to_decimal(witness.assumed_even_charge);
  doc["base"] = witness.base_is_evens ? "evens" : "odds";
  doc["base_charge"] = to_decimal(witness.base_charge);
  doc["removed_count"] = to_decimal(witness.removed_count);
  doc["removed_head"] = witness.removed_head;
  doc["forced_charge"] = "0";
  doc["derivation"] = witness.derivation;
  return doc;
}

json obstruction_to_json(const Obstruction& ob) {
  json doc;
  doc["schema"] = kSchemaTag;
  doc["a"] = to_decimal(ob.a);
  doc["values"] = bigint_array(ob.values);
  doc["l"] = ob.l;
  doc["m"] = ob.m;
  doc["p"] = to_decimal(ob.p);
  doc["chain"] = ob.chain_descending ? "descending" : "ascending";
  doc["f"] = ob.f_description;
  doc["f_charge"] = to_decimal(ob.f_charge);
  doc["g_head_indices"] = bigint_array(ob.g_head);
  doc["narrative"] = ob.narrative;
  return doc;
}

std::string to_stable_string(const json& doc) { return doc.dump(2) + "\n"; }

}  // namespace snzlab::io
