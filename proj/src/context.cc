#include "pddls/context.h"

#include <filesystem>
#include <fstream>
#include <set>

#include "pddls/error.h"
#include "pddls/strings.h"

namespace pddls {

namespace {

JsonLd typed_symbols_json(const std::vector<TypedSymbol>& symbols) {
  JsonLd arr = JsonLd::array();
  for (const TypedSymbol& s : symbols) {
    JsonLd obj = JsonLd::object();
    obj[s.name] = s.type.empty() ? JsonLd(nullptr) : JsonLd(s.type);
    arr.push_back(std::move(obj));
  }
  return arr;
}

JsonLd formula_json(const Formula& f) {
  JsonLd obj = JsonLd::object();
  switch (f.kind) {
    case Formula::Kind::kAtom:
      obj[f.name] = f.args;
      break;
    case Formula::Kind::kNot:
      obj["pddl:not"] = formula_json(f.children.front());
      break;
    case Formula::Kind::kAnd: {
      JsonLd parts = JsonLd::array();
      for (const Formula& c : f.children) parts.push_back(formula_json(c));
      obj["pddl:and"] = std::move(parts);
      break;
    }
  }
  return obj;
}

const JsonLd& single_entry(const JsonLd& j, const std::string& key, std::string* name) {
  if (!j.is_object() || j.size() != 1) throw SchemaError(key, "expected a single-key object");
  *name = j.begin().key();
  return j.begin().value();
}

std::string expect_string(const JsonLd& j, const std::string& key) {
  if (!j.is_string()) throw SchemaError(key, "expected a string");
  return j.get<std::string>();
}

std::vector<TypedSymbol> typed_symbols_from(const JsonLd& j, const std::string& key) {
  if (!j.is_array()) throw SchemaError(key, "expected an array");
  std::vector<TypedSymbol> out;
  for (const JsonLd& entry : j) {
    std::string name;
    const JsonLd& type = single_entry(entry, key, &name);
    if (type.is_null()) {
      out.push_back({name, ""});
    } else if (type.is_string()) {
      out.push_back({name, type.get<std::string>()});
    } else {
      throw SchemaError(key, "type of '" + name + "' must be null or a string");
    }
  }
  return out;
}

Formula formula_from(const JsonLd& j, const std::string& key) {
  std::string name;
  const JsonLd& body = single_entry(j, key, &name);
  if (name == "pddl:not") return Formula::negate(formula_from(body, key));
  if (name == "pddl:and") {
    if (!body.is_array()) throw SchemaError(key, "pddl:and expects an array");
    std::vector<Formula> parts;
    for (const JsonLd& c : body) parts.push_back(formula_from(c, key));
    return Formula::conjunction(std::move(parts));
  }
  if (!body.is_array()) throw SchemaError(key, "arguments of '" + name + "' must be an array");
  std::vector<std::string> args;
  for (const JsonLd& a : body) args.push_back(expect_string(a, key));
  return Formula::atom(name, std::move(args));
}

std::optional<SExpr> opaque_from(const JsonLd& j, const std::string& key) {
  std::vector<SExpr> parsed = read_sexprs(expect_string(j, key));
  if (parsed.size() != 1) throw SchemaError(key, "expected one s-expression");
  return parsed.front();
}

}  // namespace

std::optional<std::string> expand(std::string_view term, const ContextMap& context) {
  return context.lookup(term);
}

JsonLd to_jsonld(const Document& doc) {
  JsonLd out = JsonLd::object();

  JsonLd ctx = JsonLd::object();
  ctx[std::string(kPddlPrefix)] = std::string(kPddlPrefixIri);
  for (const auto& b : doc.context.entries) ctx[b.term] = b.iri;
  if (doc.context_ref) {
    out["@context"] = JsonLd::array({*doc.context_ref, ctx});
  } else {
    out["@context"] = std::move(ctx);
  }

  if (doc.is_domain()) {
    out["pddl:domain"] = doc.name;
  } else {
    out["pddl:problem"] = doc.name;
    out["pddl:domain"] = doc.domain_ref;
  }

  JsonLd reqs = JsonLd::array();
  for (const std::string& r : doc.requirements) {
    if (!iequals(r, ":semantics")) reqs.push_back(r);
  }
  out["pddl:requirements"] = std::move(reqs);

  if (doc.is_domain()) {
    if (!doc.types.empty()) out["pddl:types"] = typed_symbols_json(doc.types);
    if (!doc.constants.empty()) out["pddl:constants"] = typed_symbols_json(doc.constants);
    if (doc.functions) out["pddl:functions"] = to_string(*doc.functions);
    if (doc.constraints) out["pddl:constraints"] = to_string(*doc.constraints);
    JsonLd preds = JsonLd::array();
    for (const PredicateDecl& p : doc.predicates) {
      JsonLd obj = JsonLd::object();
      obj[p.name] = typed_symbols_json(p.params);
      preds.push_back(std::move(obj));
    }
    out["pddl:predicates"] = std::move(preds);
    JsonLd structure = JsonLd::array();
    for (const ActionDef& a : doc.actions) {
      JsonLd obj = JsonLd::object();
      obj["pddl:action"] = a.name;
      obj["pddl:parameters"] = typed_symbols_json(a.parameters);
      if (a.precondition) obj["pddl:precondition"] = formula_json(*a.precondition);
      if (a.effect) obj["pddl:effect"] = formula_json(*a.effect);
      structure.push_back(std::move(obj));
    }
    out["pddl:structure"] = std::move(structure);
  } else {
    out["pddl:objects"] = typed_symbols_json(doc.objects);
    JsonLd init = JsonLd::array();
    for (const Formula& f : doc.init) init.push_back(formula_json(f));
    out["pddl:init"] = std::move(init);
    if (doc.goal) out["pddl:goal"] = formula_json(*doc.goal);
    if (doc.constraints) out["pddl:constraints"] = to_string(*doc.constraints);
  }
  return out;
}

Document from_jsonld(const JsonLd& json) {
  if (!json.is_object()) throw SchemaError("(root)", "expected a JSON object");
  if (!json.contains("@context")) throw SchemaError("@context", "missing");

  Document doc;
  doc.kind = json.contains("pddl:problem") ? DocumentKind::kProblem : DocumentKind::kDomain;
  const bool domain = doc.is_domain();
  if (domain && !json.contains("pddl:domain")) throw SchemaError("pddl:domain", "missing");

  for (auto it = json.begin(); it != json.end(); ++it) {
    const std::string& key = it.key();
    const JsonLd& value = it.value();
    if (key == "@context") {
      const JsonLd* ctx = &value;
      if (value.is_array()) {
        if (value.size() != 2 || !value[0].is_string()) {
          throw SchemaError(key, "expected [\"<URI>\", {...}]");
        }
        doc.context_ref = value[0].get<std::string>();
        ctx = &value[1];
      }
      if (!ctx->is_object()) throw SchemaError(key, "expected an object");
      bool saw_prefix = false;
      for (auto c = ctx->begin(); c != ctx->end(); ++c) {
        std::string iri = expect_string(c.value(), key);
        if (c.key() == kPddlPrefix) {
          if (iri != kPddlPrefixIri) throw SchemaError(key, "the 'pddl' prefix must bind uri:pddl");
          saw_prefix = true;
          continue;
        }
        try {
          doc.context.bind(c.key(), std::move(iri));
        } catch (const ContextError& err) {
          throw SchemaError(key, err.what());
        }
      }
      if (!saw_prefix) throw SchemaError(key, "missing the 'pddl' binding");
    } else if (key == "pddl:domain") {
      (domain ? doc.name : doc.domain_ref) = expect_string(value, key);
    } else if (key == "pddl:problem" && !domain) {
      doc.name = expect_string(value, key);
    } else if (key == "pddl:requirements") {
      if (!value.is_array()) throw SchemaError(key, "expected an array");
      for (const JsonLd& r : value) doc.requirements.push_back(expect_string(r, key));
    } else if (key == "pddl:types" && domain) {
      doc.types = typed_symbols_from(value, key);
    } else if (key == "pddl:constants" && domain) {
      doc.constants = typed_symbols_from(value, key);
    } else if (key == "pddl:functions" && domain) {
      doc.functions = opaque_from(value, key);
    } else if (key == "pddl:constraints") {
      doc.constraints = opaque_from(value, key);
    } else if (key == "pddl:predicates" && domain) {
      if (!value.is_array()) throw SchemaError(key, "expected an array");
      for (const JsonLd& entry : value) {
        PredicateDecl p;
        p.params = typed_symbols_from(single_entry(entry, key, &p.name), key);
        doc.predicates.push_back(std::move(p));
      }
    } else if (key == "pddl:structure" && domain) {
      if (!value.is_array()) throw SchemaError(key, "expected an array");
      for (const JsonLd& entry : value) {
        if (!entry.is_object()) throw SchemaError(key, "expected action objects");
        ActionDef a;
        for (auto f = entry.begin(); f != entry.end(); ++f) {
          if (f.key() == "pddl:action") {
            a.name = expect_string(f.value(), f.key());
          } else if (f.key() == "pddl:parameters") {
            a.parameters = typed_symbols_from(f.value(), f.key());
          } else if (f.key() == "pddl:precondition") {
            a.precondition = formula_from(f.value(), f.key());
          } else if (f.key() == "pddl:effect") {
            a.effect = formula_from(f.value(), f.key());
          } else {
            throw SchemaError(f.key(), "unknown action key");
          }
        }
        if (a.name.empty()) throw SchemaError("pddl:action", "missing action name");
        doc.actions.push_back(std::move(a));
      }
    } else if (key == "pddl:objects" && !domain) {
      doc.objects = typed_symbols_from(value, key);
    } else if (key == "pddl:init" && !domain) {
      if (!value.is_array()) throw SchemaError(key, "expected an array");
      for (const JsonLd& f : value) doc.init.push_back(formula_from(f, key));
    } else if (key == "pddl:goal" && !domain) {
      doc.goal = formula_from(value, key);
    } else {
      throw SchemaError(key, "unknown key");
    }
  }
  if ((!doc.context.empty() || doc.context_ref) && !doc.has_requirement(":semantics")) {
    doc.requirements.push_back(":semantics");
  }
  return doc;
}

std::string dump_jsonld(const JsonLd& json) { return json.dump(2) + "\n"; }

std::string context_file_name(std::string_view iri) {
  std::string out;
  for (char c : iri) {
    const bool keep = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') ||
                      c == '.' || c == '_' || c == '-';
    out.push_back(keep ? c : '_');
  }
  return out + ".jsonld";
}

void resolve_context_ref(Document& doc, const std::string& context_dir) {
  if (!doc.context_ref) return;
  const std::filesystem::path path =
      std::filesystem::path(context_dir) / context_file_name(*doc.context_ref);
  std::ifstream in(path);
  if (!in) throw ContextError("remote context '" + *doc.context_ref + "' not found at " + path.string());
  JsonLd json;
  try {
    json = JsonLd::parse(in);
  } catch (const JsonLd::exception& err) {
    throw ContextError("malformed context file " + path.string() + ": " + err.what());
  }
  const JsonLd& ctx = json.is_object() && json.contains("@context") ? json["@context"] : json;
  if (!ctx.is_object()) throw ContextError("context file " + path.string() + " holds no @context object");
  ContextMap merged;
  for (auto it = ctx.begin(); it != ctx.end(); ++it) {
    if (it.key() == kPddlPrefix) continue;
    if (!it.value().is_string()) throw ContextError("non-string IRI for '" + it.key() + "' in " + path.string());
    if (doc.context.lookup(it.key())) continue;
    merged.bind(it.key(), it.value().get<std::string>());
  }
  for (auto& b : doc.context.entries) merged.entries.push_back(std::move(b));
  doc.context = std::move(merged);
  doc.context_ref.reset();
}

}  // namespace pddls
