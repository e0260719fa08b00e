#include "sketchplan/pddl.hpp"

#include <algorithm>
#include <cassert>
#include <cctype>
#include <map>
#include <set>
#include <sstream>
#include <unordered_set>

#include "json.hpp"
#include "sketchplan/errors.hpp"

namespace sketchplan {

bool GroundedTask::has_static(const std::string &pred,
                              const std::vector<std::string> &args) const {
    GroundAtom a{pred, args};
    for (const auto &s : static_init)
        if (s == a) return true;
    return false;
}

uint64_t GroundedTask::fingerprint() const {
    if (fingerprint_cache_) return fingerprint_cache_;
    uint64_t h = 14695981039346656037ull;
    auto mix = [&h](const std::string &s) {
        for (unsigned char c : s) {
            h ^= c;
            h *= 1099511628211ull;
        }
        h ^= 0xff;
        h *= 1099511628211ull;
    };
    mix(domain_name);
    mix(instance_name);
    for (const auto &a : atoms) mix(a.str());
    for (const auto &act : actions) {
        mix(act.name());
        for (AtomIndex i : act.pre) h = h * 31 + i;
        for (AtomIndex i : act.add) h = h * 37 + i;
        for (AtomIndex i : act.del) h = h * 41 + i;
    }
    for (AtomIndex i : init.atoms) h = h * 43 + i;
    for (AtomIndex i : goal) h = h * 47 + i;
    if (!h) h = 1;  // keep 0 as the "not yet computed" sentinel
    fingerprint_cache_ = h;
    return h;
}

namespace pddl {
namespace {

struct Token {
    std::string text;
    int line;
    int col;
};

std::vector<Token> tokenize(const std::string &text) {
    std::vector<Token> tokens;
    int line = 1, col = 1;
    size_t i = 0;
    while (i < text.size()) {
        char c = text[i];
        if (c == '\n') {
            ++line;
            col = 1;
            ++i;
        } else if (std::isspace(static_cast<unsigned char>(c))) {
            ++col;
            ++i;
        } else if (c == ';') {
            while (i < text.size() && text[i] != '\n') ++i;
        } else if (c == '(' || c == ')') {
            tokens.push_back({std::string(1, c), line, col});
            ++col;
            ++i;
        } else {
            int start_col = col;
            std::string sym;
            while (i < text.size() && !std::isspace(static_cast<unsigned char>(text[i])) &&
                   text[i] != '(' && text[i] != ')' && text[i] != ';') {
                sym += static_cast<char>(
                    std::tolower(static_cast<unsigned char>(text[i])));
                ++i;
                ++col;
            }
            tokens.push_back({sym, line, start_col});
        }
    }
    return tokens;
}

class Parser {
public:
    explicit Parser(const std::string &text) : tokens_(tokenize(text)) {}

    bool at_end() const { return pos_ >= tokens_.size(); }

    const Token &peek() const {
        if (at_end()) throw SyntaxError("unexpected end of input", last_line(), 0);
        return tokens_[pos_];
    }

    Token next() {
        Token t = peek();
        ++pos_;
        return t;
    }

    void expect(const std::string &text) {
        Token t = next();
        if (t.text != text)
            throw SyntaxError("expected '" + text + "', got '" + t.text + "'",
                              t.line, t.col);
    }

    std::string expect_symbol() {
        Token t = next();
        if (t.text == "(" || t.text == ")")
            throw SyntaxError("expected symbol, got '" + t.text + "'", t.line,
                              t.col);
        return t.text;
    }

    bool peek_is(const std::string &text) const {
        return !at_end() && peek().text == text;
    }

    void skip_balanced() {
        // Consume one complete s-expression or symbol.
        Token t = next();
        if (t.text != "(") return;
        int depth = 1;
        while (depth > 0) {
            Token u = next();
            if (u.text == "(") ++depth;
            if (u.text == ")") --depth;
        }
    }

private:
    int last_line() const {
        return tokens_.empty() ? 1 : tokens_.back().line;
    }

    std::vector<Token> tokens_;
    size_t pos_ = 0;
};

// "n1 n2 - t n3 ..." up to the closing paren (not consumed).
std::vector<TypedName> parse_typed_list(Parser &p) {
    std::vector<TypedName> result;
    std::vector<std::string> pending;
    while (!p.peek_is(")")) {
        std::string sym = p.expect_symbol();
        if (sym == "-") {
            std::string type = p.expect_symbol();
            for (auto &name : pending) result.push_back({name, type});
            pending.clear();
        } else {
            pending.push_back(sym);
        }
    }
    for (auto &name : pending) result.push_back({name, "object"});
    return result;
}

Literal parse_literal_body(Parser &p) {
    Literal lit;
    lit.pred = p.expect_symbol();
    while (!p.peek_is(")")) lit.args.push_back(p.expect_symbol());
    p.expect(")");
    return lit;
}

void check_literal(const DomainModel &dom, const ActionSchema &schema,
                   const Literal &lit, const Token &where) {
    const Predicate *pred = dom.find_predicate(lit.pred);
    if (!pred)
        throw UnknownPredicate("undeclared predicate '" + lit.pred +
                               "' in action " + schema.name);
    if (pred->param_types.size() != lit.args.size())
        throw ArityMismatch("predicate '" + lit.pred + "' expects " +
                            std::to_string(pred->param_types.size()) +
                            " arguments, got " +
                            std::to_string(lit.args.size()) + " in action " +
                            schema.name);
    for (const auto &arg : lit.args) {
        if (arg.size() > 1 && arg[0] == '?') {
            bool declared = false;
            for (const auto &param : schema.params)
                if (param.name == arg) declared = true;
            if (!declared)
                throw SyntaxError("variable '" + arg +
                                      "' not in parameters of action " +
                                      schema.name,
                                  where.line, where.col);
        } else {
            bool known = false;
            for (const auto &c : dom.constants)
                if (c.name == arg) known = true;
            if (!known)
                throw UnknownObjectType("constant '" + arg +
                                        "' in action " + schema.name +
                                        " is not declared in :constants");
        }
    }
}

ActionSchema parse_action(Parser &p, const DomainModel &dom) {
    ActionSchema schema;
    Token name_tok = p.peek();
    schema.name = p.expect_symbol();

    auto parse_condition_list = [&](std::vector<Literal> &positive,
                                    std::vector<Literal> *negative) {
        p.expect("(");
        std::string head = p.expect_symbol();
        auto parse_one = [&]() {
            std::string inner = p.expect_symbol();
            if (inner == "not") {
                if (!negative)
                    throw UnsupportedFeature("negative precondition in action " +
                                             schema.name);
                p.expect("(");
                negative->push_back(parse_literal_body(p));
                p.expect(")");
            } else if (inner == "=" || inner == "or" || inner == "forall" ||
                       inner == "exists" || inner == "when" || inner == "imply") {
                throw UnsupportedFeature(inner + " in action " + schema.name);
            } else {
                Literal lit;
                lit.pred = inner;
                while (!p.peek_is(")")) lit.args.push_back(p.expect_symbol());
                p.expect(")");
                positive.push_back(lit);
            }
        };
        if (head == "and") {
            while (!p.peek_is(")")) {
                p.expect("(");
                parse_one();
            }
            p.expect(")");
        } else if (head == "not") {
            if (!negative)
                throw UnsupportedFeature("negative precondition in action " +
                                         schema.name);
            p.expect("(");
            negative->push_back(parse_literal_body(p));
            p.expect(")");
            p.expect(")");
        } else if (head == "=" || head == "or" || head == "forall" ||
                   head == "exists" || head == "when" || head == "imply") {
            throw UnsupportedFeature(head + " in action " + schema.name);
        } else {
            Literal lit;
            lit.pred = head;
            while (!p.peek_is(")")) lit.args.push_back(p.expect_symbol());
            p.expect(")");
            positive.push_back(lit);
        }
    };

    while (!p.peek_is(")")) {
        std::string key = p.expect_symbol();
        if (key == ":parameters") {
            p.expect("(");
            schema.params = parse_typed_list(p);
            p.expect(")");
        } else if (key == ":precondition") {
            parse_condition_list(schema.pre, nullptr);
        } else if (key == ":effect") {
            parse_condition_list(schema.add, &schema.del);
        } else {
            throw UnsupportedFeature("action field " + key + " in action " +
                                     schema.name);
        }
    }
    p.expect(")");

    for (const auto &param : schema.params) {
        if (param.name.empty() || param.name[0] != '?')
            throw SyntaxError("parameter '" + param.name +
                                  "' must start with '?' in action " +
                                  schema.name,
                              name_tok.line, name_tok.col);
        bool type_ok = param.type == "object";
        for (const auto &t : dom.types)
            if (t.first == param.type) type_ok = true;
        if (!type_ok)
            throw UnknownObjectType("parameter type '" + param.type +
                                    "' of action " + schema.name +
                                    " not declared");
    }
    for (const auto &lit : schema.pre) check_literal(dom, schema, lit, name_tok);
    for (const auto &lit : schema.add) check_literal(dom, schema, lit, name_tok);
    for (const auto &lit : schema.del) check_literal(dom, schema, lit, name_tok);
    return schema;
}

const std::set<std::string> kSupportedRequirements = {":strips", ":typing",
                                                      ":constants"};

}  // namespace

bool DomainModel::is_subtype(const std::string &t,
                             const std::string &required) const {
    if (t == required || required == "object") return true;
    std::string cur = t;
    // Walk up the hierarchy; depth bounded by the declared type count.
    for (size_t step = 0; step <= types.size(); ++step) {
        for (const auto &entry : types) {
            if (entry.first == cur) {
                cur = entry.second;
                if (cur == required) return true;
                break;
            }
        }
        if (cur == "object") break;
    }
    return false;
}

const Predicate *DomainModel::find_predicate(const std::string &name) const {
    for (const auto &p : predicates)
        if (p.name == name) return &p;
    return nullptr;
}

DomainModel parse_domain(const std::string &text) {
    Parser p(text);
    DomainModel dom;
    p.expect("(");
    p.expect("define");
    p.expect("(");
    p.expect("domain");
    dom.name = p.expect_symbol();
    p.expect(")");

    while (!p.peek_is(")")) {
        p.expect("(");
        std::string section = p.expect_symbol();
        if (section == ":requirements") {
            while (!p.peek_is(")")) {
                std::string req = p.expect_symbol();
                if (!kSupportedRequirements.count(req))
                    throw UnsupportedFeature(req);
            }
            p.expect(")");
        } else if (section == ":types") {
            for (const auto &entry : parse_typed_list(p))
                dom.types.emplace_back(entry.name, entry.type);
            p.expect(")");
        } else if (section == ":constants") {
            dom.constants = parse_typed_list(p);
            p.expect(")");
        } else if (section == ":predicates") {
            while (!p.peek_is(")")) {
                p.expect("(");
                Predicate pred;
                pred.name = p.expect_symbol();
                for (const auto &param : parse_typed_list(p))
                    pred.param_types.push_back(param.type);
                p.expect(")");
                for (const auto &existing : dom.predicates)
                    if (existing.name == pred.name)
                        throw SyntaxError("duplicate predicate '" + pred.name +
                                              "'",
                                          0, 0);
                dom.predicates.push_back(pred);
            }
            p.expect(")");
        } else if (section == ":action") {
            dom.schemas.push_back(parse_action(p, dom));
        } else {
            throw UnsupportedFeature(section);
        }
    }
    p.expect(")");

    for (const auto &entry : dom.types) {
        if (entry.second == "object") continue;
        bool found = false;
        for (const auto &other : dom.types)
            if (other.first == entry.second) found = true;
        if (!found)
            throw UnknownObjectType("parent type '" + entry.second +
                                    "' of '" + entry.first + "' not declared");
    }
    return dom;
}

namespace {

GroundAtom parse_ground_atom(Parser &p, const DomainModel &dom,
                             const std::vector<TypedName> &objects,
                             const std::string &context) {
    GroundAtom atom;
    atom.pred = p.expect_symbol();
    while (!p.peek_is(")")) atom.args.push_back(p.expect_symbol());
    p.expect(")");

    const Predicate *pred = dom.find_predicate(atom.pred);
    if (!pred)
        throw UnknownPredicate("undeclared predicate '" + atom.pred + "' in " +
                               context);
    if (pred->param_types.size() != atom.args.size())
        throw ArityMismatch("predicate '" + atom.pred + "' expects " +
                            std::to_string(pred->param_types.size()) +
                            " arguments, got " +
                            std::to_string(atom.args.size()) + " in " + context);
    for (size_t i = 0; i < atom.args.size(); ++i) {
        const TypedName *obj = nullptr;
        for (const auto &o : objects)
            if (o.name == atom.args[i]) obj = &o;
        if (!obj)
            throw UnknownObjectType("object '" + atom.args[i] + "' in " +
                                    context + " not declared");
        if (!dom.is_subtype(obj->type, pred->param_types[i]))
            throw UnknownObjectType("object '" + obj->name + "' of type '" +
                                    obj->type + "' incompatible with '" +
                                    pred->param_types[i] + "' in " + context);
    }
    return atom;
}

}  // namespace

InstanceModel parse_problem(const std::string &text, const DomainModel &dom) {
    Parser p(text);
    InstanceModel inst;
    p.expect("(");
    p.expect("define");
    p.expect("(");
    p.expect("problem");
    inst.name = p.expect_symbol();
    p.expect(")");

    std::vector<TypedName> all_objects = dom.constants;

    while (!p.peek_is(")")) {
        p.expect("(");
        std::string section = p.expect_symbol();
        if (section == ":domain") {
            inst.domain_name = p.expect_symbol();
            p.expect(")");
        } else if (section == ":requirements") {
            while (!p.peek_is(")")) {
                std::string req = p.expect_symbol();
                if (!kSupportedRequirements.count(req))
                    throw UnsupportedFeature(req);
            }
            p.expect(")");
        } else if (section == ":objects") {
            inst.objects = parse_typed_list(p);
            p.expect(")");
            for (const auto &obj : inst.objects) {
                bool type_ok = obj.type == "object";
                for (const auto &t : dom.types)
                    if (t.first == obj.type) type_ok = true;
                if (!type_ok)
                    throw UnknownObjectType("object '" + obj.name +
                                            "' has undeclared type '" +
                                            obj.type + "'");
                all_objects.push_back(obj);
            }
        } else if (section == ":init") {
            while (!p.peek_is(")")) {
                p.expect("(");
                inst.init.push_back(
                    parse_ground_atom(p, dom, all_objects, ":init"));
            }
            p.expect(")");
        } else if (section == ":goal") {
            p.expect("(");
            if (p.peek_is("and")) {
                p.expect("and");
                while (!p.peek_is(")")) {
                    p.expect("(");
                    inst.goal.push_back(
                        parse_ground_atom(p, dom, all_objects, ":goal"));
                }
                p.expect(")");
            } else {
                inst.goal.push_back(
                    parse_ground_atom(p, dom, all_objects, ":goal"));
            }
            p.expect(")");
        } else {
            throw UnsupportedFeature(section);
        }
    }
    p.expect(")");
    return inst;
}

namespace {

void emit_typed_list(std::ostringstream &out, const std::vector<TypedName> &list,
                     const std::string &indent) {
    for (const auto &entry : list)
        out << indent << entry.name << " - " << entry.type << "\n";
}

std::string literal_str(const Literal &lit) {
    std::string s = "(" + lit.pred;
    for (const auto &a : lit.args) s += " " + a;
    return s + ")";
}

std::string atom_str(const GroundAtom &atom) {
    std::string s = "(" + atom.pred;
    for (const auto &a : atom.args) s += " " + a;
    return s + ")";
}

}  // namespace

std::string emit_domain(const DomainModel &dom) {
    std::ostringstream out;
    out << "(define (domain " << dom.name << ")\n";
    out << "  (:requirements :strips :typing)\n";
    if (!dom.types.empty()) {
        out << "  (:types\n";
        for (const auto &t : dom.types)
            out << "    " << t.first << " - " << t.second << "\n";
        out << "  )\n";
    }
    if (!dom.constants.empty()) {
        out << "  (:constants\n";
        emit_typed_list(out, dom.constants, "    ");
        out << "  )\n";
    }
    out << "  (:predicates\n";
    for (const auto &pred : dom.predicates) {
        out << "    (" << pred.name;
        for (size_t i = 0; i < pred.param_types.size(); ++i)
            out << " ?x" << i << " - " << pred.param_types[i];
        out << ")\n";
    }
    out << "  )\n";
    for (const auto &schema : dom.schemas) {
        out << "  (:action " << schema.name << "\n    :parameters (";
        for (size_t i = 0; i < schema.params.size(); ++i) {
            if (i) out << " ";
            out << schema.params[i].name << " - " << schema.params[i].type;
        }
        out << ")\n    :precondition (and";
        for (const auto &lit : schema.pre) out << " " << literal_str(lit);
        out << ")\n    :effect (and";
        for (const auto &lit : schema.add) out << " " << literal_str(lit);
        for (const auto &lit : schema.del)
            out << " (not " << literal_str(lit) << ")";
        out << ")\n  )\n";
    }
    out << ")\n";
    return out.str();
}

std::string emit_problem(const InstanceModel &inst) {
    std::ostringstream out;
    out << "(define (problem " << inst.name << ")\n";
    out << "  (:domain " << inst.domain_name << ")\n";
    out << "  (:objects\n";
    emit_typed_list(out, inst.objects, "    ");
    out << "  )\n  (:init\n";
    for (const auto &atom : inst.init) out << "    " << atom_str(atom) << "\n";
    out << "  )\n  (:goal (and";
    for (const auto &atom : inst.goal) out << " " << atom_str(atom);
    out << "))\n)\n";
    return out.str();
}

namespace {

struct Grounder {
    const DomainModel &dom;
    const InstanceModel &inst;
    uint64_t action_cap;

    std::set<std::string> static_preds;
    std::set<std::string> static_true;  // atom strings true in init
    std::map<std::string, std::vector<std::string>> objects_by_type;

    struct RawAction {
        const ActionSchema *schema;
        std::vector<std::string> binding;
        std::vector<GroundAtom> pre, add, del;
    };
    std::vector<RawAction> raw_actions;

    void detect_statics() {
        std::set<std::string> dynamic;
        for (const auto &schema : dom.schemas) {
            for (const auto &lit : schema.add) dynamic.insert(lit.pred);
            for (const auto &lit : schema.del) dynamic.insert(lit.pred);
        }
        for (const auto &pred : dom.predicates)
            if (!dynamic.count(pred.name)) static_preds.insert(pred.name);
        for (const auto &atom : inst.init)
            if (static_preds.count(atom.pred)) static_true.insert(atom.str());
    }

    void bucket_objects() {
        std::vector<TypedName> all = dom.constants;
        all.insert(all.end(), inst.objects.begin(), inst.objects.end());
        std::set<std::string> param_types = {"object"};
        for (const auto &t : dom.types) param_types.insert(t.first);
        for (const auto &type : param_types) {
            auto &bucket = objects_by_type[type];
            for (const auto &obj : all)
                if (dom.is_subtype(obj.type, type)) bucket.push_back(obj.name);
        }
    }

    GroundAtom instantiate(const Literal &lit, const ActionSchema &schema,
                           const std::vector<std::string> &binding) const {
        GroundAtom atom;
        atom.pred = lit.pred;
        for (const auto &arg : lit.args) {
            if (!arg.empty() && arg[0] == '?') {
                size_t idx = 0;
                for (; idx < schema.params.size(); ++idx)
                    if (schema.params[idx].name == arg) break;
                atom.args.push_back(binding[idx]);
            } else {
                atom.args.push_back(arg);
            }
        }
        return atom;
    }

    void enumerate(const ActionSchema &schema, std::vector<std::string> &binding,
                   size_t param) {
        if (param == schema.params.size()) {
            RawAction raw;
            raw.schema = &schema;
            raw.binding = binding;
            for (const auto &lit : schema.pre) {
                GroundAtom atom = instantiate(lit, schema, binding);
                if (static_preds.count(atom.pred)) {
                    if (!static_true.count(atom.str())) return;  // never applicable
                } else {
                    raw.pre.push_back(atom);
                }
            }
            for (const auto &lit : schema.add)
                raw.add.push_back(instantiate(lit, schema, binding));
            for (const auto &lit : schema.del)
                raw.del.push_back(instantiate(lit, schema, binding));
            if (raw_actions.size() >= action_cap)
                throw GroundingExplosion("ground action count exceeds cap " +
                                         std::to_string(action_cap));
            raw_actions.push_back(std::move(raw));
            return;
        }
        auto it = objects_by_type.find(schema.params[param].type);
        if (it == objects_by_type.end()) return;
        for (const auto &obj : it->second) {
            binding[param] = obj;
            enumerate(schema, binding, param + 1);
        }
    }

    GroundedTask run() {
        detect_statics();
        bucket_objects();
        for (const auto &schema : dom.schemas) {
            std::vector<std::string> binding(schema.params.size());
            enumerate(schema, binding, 0);
        }

        GroundedTask task;
        task.domain_name = dom.name;
        task.instance_name = inst.name;

        // Dynamic atom universe, lexicographic by (predicate, args).
        std::set<GroundAtom> universe;
        for (const auto &atom : inst.init)
            if (!static_preds.count(atom.pred)) universe.insert(atom);
        for (const auto &raw : raw_actions) {
            for (const auto &a : raw.pre) universe.insert(a);
            for (const auto &a : raw.add) universe.insert(a);
            for (const auto &a : raw.del) universe.insert(a);
        }
        std::vector<GroundAtom> goal_atoms;
        for (const auto &atom : inst.goal) {
            if (static_preds.count(atom.pred)) {
                if (!static_true.count(atom.str()))
                    throw GroundingExplosion(
                        "goal atom " + atom.str() +
                        " is static and false in init: unsolvable");
                continue;  // trivially satisfied, drop
            }
            universe.insert(atom);
            goal_atoms.push_back(atom);
        }

        for (const auto &atom : universe) {
            task.atom_ids[atom.str()] =
                static_cast<AtomIndex>(task.atoms.size());
            task.atoms.push_back(atom);
        }

        // Actions sorted lexicographically by (schema name, args): the IW
        // tie-break contract.
        std::sort(raw_actions.begin(), raw_actions.end(),
                  [](const RawAction &a, const RawAction &b) {
                      if (a.schema->name != b.schema->name)
                          return a.schema->name < b.schema->name;
                      return a.binding < b.binding;
                  });
        for (const auto &raw : raw_actions) {
            GroundAction act;
            act.schema = raw.schema->name;
            act.args = raw.binding;
            auto to_ids = [&task](const std::vector<GroundAtom> &atoms) {
                std::vector<AtomIndex> ids;
                for (const auto &a : atoms) ids.push_back(task.atom_ids.at(a.str()));
                std::sort(ids.begin(), ids.end());
                ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
                return ids;
            };
            act.pre = to_ids(raw.pre);
            act.add = to_ids(raw.add);
            act.del = to_ids(raw.del);
            // PDDL add-wins semantics: keep del and add disjoint.
            std::vector<AtomIndex> del;
            for (AtomIndex d : act.del)
                if (!std::binary_search(act.add.begin(), act.add.end(), d))
                    del.push_back(d);
            act.del = std::move(del);
            // Drop no-ops (e.g. moves with equal source and target): nothing
            // deleted and every added atom already required to hold.
            if (act.del.empty() &&
                std::includes(act.pre.begin(), act.pre.end(), act.add.begin(),
                              act.add.end()))
                continue;
            task.actions.push_back(std::move(act));
        }

        std::vector<AtomIndex> init_ids;
        for (const auto &atom : inst.init) {
            if (static_preds.count(atom.pred)) {
                task.static_init.push_back(atom);
            } else {
                init_ids.push_back(task.atom_ids.at(atom.str()));
            }
        }
        std::sort(task.static_init.begin(), task.static_init.end());
        task.static_init.erase(
            std::unique(task.static_init.begin(), task.static_init.end()),
            task.static_init.end());
        task.init = State(std::move(init_ids));

        for (const auto &atom : goal_atoms)
            task.goal.push_back(task.atom_ids.at(atom.str()));
        std::sort(task.goal.begin(), task.goal.end());
        task.goal.erase(std::unique(task.goal.begin(), task.goal.end()),
                        task.goal.end());
        return task;
    }
};

}  // namespace

GroundedTask ground(const DomainModel &dom, const InstanceModel &inst,
                    uint64_t action_cap) {
    Grounder g{dom, inst, action_cap};
    return g.run();
}

GroundedTask add_unsatisfied_goal_predicates(const GroundedTask &task) {
    GroundedTask ext = task;
    if (task.goal.empty()) return ext;

    for (AtomIndex g : task.goal) {
        GroundAtom marker = task.atoms[g];
        marker.pred += "_ug";
        AtomIndex id = static_cast<AtomIndex>(ext.atoms.size());
        ext.atom_ids[marker.str()] = id;
        ext.atoms.push_back(marker);
        ext.ug_pairs.emplace_back(g, id);

        if (!task.init.contains(g)) ext.init.atoms.push_back(id);
    }
    ext.init.canonicalize();

    for (auto &act : ext.actions) {
        std::vector<AtomIndex> extra_add, extra_del;
        for (const auto &[goal_atom, marker] : ext.ug_pairs) {
            if (std::binary_search(act.add.begin(), act.add.end(), goal_atom))
                extra_del.push_back(marker);
            if (std::binary_search(act.del.begin(), act.del.end(), goal_atom))
                extra_add.push_back(marker);
        }
        act.add.insert(act.add.end(), extra_add.begin(), extra_add.end());
        act.del.insert(act.del.end(), extra_del.begin(), extra_del.end());
        std::sort(act.add.begin(), act.add.end());
        std::sort(act.del.begin(), act.del.end());
    }
    return ext;
}

std::string task_json_dump(const GroundedTask &task) {
    nlohmann::json j;
    j["domain"] = task.domain_name;
    j["instance"] = task.instance_name;
    j["atoms"] = nlohmann::json::array();
    for (const auto &atom : task.atoms) j["atoms"].push_back(atom.str());
    j["actions"] = nlohmann::json::array();
    for (const auto &act : task.actions) {
        nlohmann::json a;
        a["name"] = act.name();
        a["pre"] = act.pre;
        a["add"] = act.add;
        a["del"] = act.del;
        j["actions"].push_back(a);
    }
    j["init"] = task.init.atoms;
    j["goal"] = task.goal;
    j["fingerprint"] = task.fingerprint();
    return j.dump(2);
}

}  // namespace pddl
}  // namespace sketchplan
