#include "planq/pddl.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

namespace planq::pddl {

namespace {

struct SExpr {
    bool is_list = false;
    std::string atom;
    std::vector<SExpr> items;
    int line = 1;
    int column = 1;

    bool is_atom(std::string_view s) const { return !is_list && atom == s; }
};

class Reader {
public:
    explicit Reader(std::string_view text) : text_(text) {}

    SExpr read_document() {
        skip_space();
        if (pos_ >= text_.size()) throw ParseError("empty input", line_, column_);
        SExpr e = read();
        skip_space();
        if (pos_ < text_.size()) throw ParseError("trailing content after definition", line_, column_);
        return e;
    }

private:
    void advance() {
        if (text_[pos_] == '\n') {
            ++line_;
            column_ = 1;
        } else {
            ++column_;
        }
        ++pos_;
    }

    void skip_space() {
        while (pos_ < text_.size()) {
            const char c = text_[pos_];
            if (c == ';') {
                while (pos_ < text_.size() && text_[pos_] != '\n') advance();
            } else if (std::isspace(static_cast<unsigned char>(c))) {
                advance();
            } else {
                break;
            }
        }
    }

    SExpr read() {
        skip_space();
        if (pos_ >= text_.size()) throw ParseError("unexpected end of input", line_, column_);
        SExpr e;
        e.line = line_;
        e.column = column_;
        if (text_[pos_] == ')') throw ParseError("unexpected ')'", line_, column_);
        if (text_[pos_] == '(') {
            e.is_list = true;
            advance();
            for (;;) {
                skip_space();
                if (pos_ >= text_.size()) throw ParseError("unbalanced '('", e.line, e.column);
                if (text_[pos_] == ')') {
                    advance();
                    break;
                }
                e.items.push_back(read());
            }
            return e;
        }
        while (pos_ < text_.size()) {
            const char c = text_[pos_];
            if (std::isspace(static_cast<unsigned char>(c)) || c == '(' || c == ')' || c == ';') break;
            e.atom.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
            advance();
        }
        return e;
    }

    std::string_view text_;
    std::size_t pos_ = 0;
    int line_ = 1;
    int column_ = 1;
};

[[noreturn]] void fail(const SExpr& at, const std::string& message) {
    throw ParseError(message, at.line, at.column);
}

const std::string& expect_atom(const SExpr& e, const char* what) {
    if (e.is_list || e.atom.empty()) fail(e, std::string("expected ") + what);
    return e.atom;
}

bool is_variable(std::string_view s) { return !s.empty() && s.front() == '?'; }

// "a b - t c - u d" -> typed names; trailing untyped names get the root type.
std::vector<TypedName> parse_typed_list(const std::vector<SExpr>& items, std::size_t begin) {
    std::vector<TypedName> out;
    std::vector<std::string> pending;
    for (std::size_t i = begin; i < items.size(); ++i) {
        const auto& item = items[i];
        if (item.is_list) {
            if (!item.items.empty() && item.items.front().is_atom("either")) {
                fail(item, "'either' types are not supported");
            }
            fail(item, "unexpected list in typed list");
        }
        if (item.atom == "-") {
            if (i + 1 >= items.size()) fail(item, "missing type after '-'");
            if (pending.empty()) fail(item, "'-' without preceding names");
            const auto& type = expect_atom(items[i + 1], "type name");
            for (auto& n : pending) out.push_back({std::move(n), type});
            pending.clear();
            ++i;
            continue;
        }
        pending.push_back(item.atom);
    }
    for (auto& n : pending) out.push_back({std::move(n), std::string(kRootType)});
    return out;
}

Atom parse_atom(const SExpr& e) {
    if (!e.is_list || e.items.empty()) fail(e, "expected atom");
    const auto& head = expect_atom(e.items.front(), "predicate name");
    if (head == "=") fail(e, "equality is not supported (only :strips and :typing)");
    if (head == "not" || head == "and" || head == "or" || head == "forall" || head == "exists" ||
        head == "when" || head == "imply") {
        fail(e, "'" + head + "' is not allowed here (only :strips and :typing)");
    }
    Atom atom{head, {}};
    for (std::size_t i = 1; i < e.items.size(); ++i) atom.args.push_back(expect_atom(e.items[i], "argument"));
    return atom;
}

// Flattens "(and ...)" conjunctions; rejects anything beyond positive atoms.
void parse_condition(const SExpr& e, std::vector<Atom>& out) {
    if (!e.is_list) fail(e, "expected condition");
    if (e.items.empty()) return;
    const auto& head = e.items.front();
    if (head.is_atom("and")) {
        for (std::size_t i = 1; i < e.items.size(); ++i) parse_condition(e.items[i], out);
        return;
    }
    if (head.is_atom("not")) fail(e, "negative preconditions are not supported (only :strips and :typing)");
    out.push_back(parse_atom(e));
}

void parse_effect(const SExpr& e, std::vector<Atom>& add, std::vector<Atom>& del) {
    if (!e.is_list) fail(e, "expected effect");
    if (e.items.empty()) return;
    const auto& head = e.items.front();
    if (head.is_atom("and")) {
        for (std::size_t i = 1; i < e.items.size(); ++i) parse_effect(e.items[i], add, del);
        return;
    }
    if (head.is_atom("not")) {
        if (e.items.size() != 2) fail(e, "malformed 'not'");
        del.push_back(parse_atom(e.items[1]));
        return;
    }
    add.push_back(parse_atom(e));
}

const SExpr& expect_header(const SExpr& doc, const char* kind) {
    if (!doc.is_list || doc.items.size() < 2 || !doc.items[0].is_atom("define")) {
        fail(doc, "expected (define ...)");
    }
    const auto& header = doc.items[1];
    if (!header.is_list || header.items.size() != 2 || !header.items[0].is_atom(kind)) {
        fail(header, std::string("expected (") + kind + " <name>)");
    }
    return header;
}

void check_atom(const DomainDef& d, const Atom& atom, const SExpr& where) {
    const auto* p = d.find_predicate(atom.predicate);
    if (!p) fail(where, "undeclared predicate '" + atom.predicate + "'");
    if (p->params.size() != atom.args.size()) {
        fail(where, "predicate '" + atom.predicate + "' expects " + std::to_string(p->params.size()) +
                        " arguments, got " + std::to_string(atom.args.size()));
    }
}

bool has_type(const DomainDef& d, std::string_view t) {
    return t == kRootType ||
           std::any_of(d.types.begin(), d.types.end(), [t](const TypedName& n) { return n.name == t; });
}

}  // namespace

const Predicate* DomainDef::find_predicate(std::string_view name) const {
    for (const auto& p : predicates) {
        if (p.name == name) return &p;
    }
    return nullptr;
}

bool DomainDef::is_subtype(std::string_view type, std::string_view ancestor) const {
    std::string current(type);
    for (std::size_t guard = 0; guard <= types.size() + 1; ++guard) {
        if (current == ancestor) return true;
        if (current == kRootType) return false;
        auto it = std::find_if(types.begin(), types.end(), [&](const TypedName& t) { return t.name == current; });
        if (it == types.end()) return false;
        current = it->type;
    }
    return false;
}

DomainDef parse_domain(std::string_view text) {
    const SExpr doc = Reader(text).read_document();
    const auto& header = expect_header(doc, "domain");
    DomainDef d;
    d.name = expect_atom(header.items[1], "domain name");

    // Schemas are collected first and checked once all predicates are known.
    std::vector<std::pair<const SExpr*, ActionSchema>> schemas;
    for (std::size_t i = 2; i < doc.items.size(); ++i) {
        const auto& section = doc.items[i];
        if (!section.is_list || section.items.empty()) fail(section, "expected domain section");
        const auto& key = expect_atom(section.items.front(), "section keyword");
        if (key == ":requirements") {
            for (std::size_t j = 1; j < section.items.size(); ++j) {
                const auto& r = expect_atom(section.items[j], "requirement");
                if (r != ":strips" && r != ":typing") {
                    fail(section.items[j], "unsupported requirement '" + r + "' (only :strips and :typing)");
                }
                d.requirements.push_back(r);
            }
        } else if (key == ":types") {
            d.types = parse_typed_list(section.items, 1);
            for (const auto& t : d.types) {
                if (t.name == kRootType) fail(section, "type 'object' cannot be redeclared");
            }
            // Parents that are only mentioned after '-' are implicit subtypes of object.
            for (std::size_t j = 0; j < d.types.size(); ++j) {
                const std::string parent = d.types[j].type;
                if (!has_type(d, parent)) d.types.push_back({parent, std::string(kRootType)});
            }
        } else if (key == ":constants") {
            d.constants = parse_typed_list(section.items, 1);
        } else if (key == ":predicates") {
            for (std::size_t j = 1; j < section.items.size(); ++j) {
                const auto& p = section.items[j];
                if (!p.is_list || p.items.empty()) fail(p, "expected predicate declaration");
                Predicate pred{expect_atom(p.items.front(), "predicate name"), parse_typed_list(p.items, 1)};
                if (d.find_predicate(pred.name)) fail(p, "duplicate predicate '" + pred.name + "'");
                d.predicates.push_back(std::move(pred));
            }
        } else if (key == ":action") {
            if (section.items.size() < 2) fail(section, "action without name");
            ActionSchema schema;
            schema.name = expect_atom(section.items[1], "action name");
            for (std::size_t j = 2; j < section.items.size(); ++j) {
                const auto& k = expect_atom(section.items[j], "action keyword");
                if (j + 1 >= section.items.size()) fail(section.items[j], "missing value for " + k);
                const auto& value = section.items[++j];
                if (k == ":parameters") {
                    if (!value.is_list) fail(value, "expected parameter list");
                    schema.params = parse_typed_list(value.items, 0);
                } else if (k == ":precondition") {
                    parse_condition(value, schema.pre);
                } else if (k == ":effect") {
                    parse_effect(value, schema.add, schema.del);
                } else {
                    fail(section.items[j - 1], "unsupported action keyword '" + k + "'");
                }
            }
            schemas.emplace_back(&section, std::move(schema));
        } else {
            fail(section, "unsupported domain section '" + key + "'");
        }
    }

    for (const auto& t : d.types) {
        if (!has_type(d, t.type)) fail(header, "unknown parent type '" + t.type + "'");
    }
    for (const auto& c : d.constants) {
        if (!has_type(d, c.type)) fail(header, "constant '" + c.name + "' has unknown type '" + c.type + "'");
    }
    for (const auto& p : d.predicates) {
        for (const auto& param : p.params) {
            if (!has_type(d, param.type)) fail(header, "predicate '" + p.name + "' uses unknown type '" + param.type + "'");
        }
    }
    for (auto& [where, schema] : schemas) {
        for (const auto& param : schema.params) {
            if (!is_variable(param.name)) fail(*where, "parameter '" + param.name + "' must start with '?'");
            if (!has_type(d, param.type)) fail(*where, "parameter '" + param.name + "' has unknown type '" + param.type + "'");
        }
        auto check = [&](const std::vector<Atom>& atoms) {
            for (const auto& atom : atoms) {
                check_atom(d, atom, *where);
                for (const auto& arg : atom.args) {
                    if (is_variable(arg)) {
                        const bool declared = std::any_of(schema.params.begin(), schema.params.end(),
                                                          [&](const TypedName& p) { return p.name == arg; });
                        if (!declared) fail(*where, "undeclared parameter '" + arg + "' in action '" + schema.name + "'");
                    } else if (std::none_of(d.constants.begin(), d.constants.end(),
                                            [&](const TypedName& c) { return c.name == arg; })) {
                        fail(*where, "unknown constant '" + arg + "' in action '" + schema.name + "'");
                    }
                }
            }
        };
        check(schema.pre);
        check(schema.add);
        check(schema.del);
        d.actions.push_back(std::move(schema));
    }
    return d;
}

ProblemDef parse_problem(std::string_view text, const DomainDef& domain) {
    const SExpr doc = Reader(text).read_document();
    const auto& header = expect_header(doc, "problem");
    ProblemDef p;
    p.name = expect_atom(header.items[1], "problem name");

    std::vector<const SExpr*> init_items;
    const SExpr* goal = nullptr;
    for (std::size_t i = 2; i < doc.items.size(); ++i) {
        const auto& section = doc.items[i];
        if (!section.is_list || section.items.empty()) fail(section, "expected problem section");
        const auto& key = expect_atom(section.items.front(), "section keyword");
        if (key == ":domain") {
            if (section.items.size() != 2) fail(section, "expected (:domain <name>)");
            p.domain_name = expect_atom(section.items[1], "domain name");
            if (p.domain_name != domain.name) {
                fail(section, "problem is for domain '" + p.domain_name + "', not '" + domain.name + "'");
            }
        } else if (key == ":requirements") {
            for (std::size_t j = 1; j < section.items.size(); ++j) {
                const auto& r = expect_atom(section.items[j], "requirement");
                if (r != ":strips" && r != ":typing") fail(section.items[j], "unsupported requirement '" + r + "'");
            }
        } else if (key == ":objects") {
            p.objects = parse_typed_list(section.items, 1);
        } else if (key == ":init") {
            for (std::size_t j = 1; j < section.items.size(); ++j) init_items.push_back(&section.items[j]);
        } else if (key == ":goal") {
            if (section.items.size() != 2) fail(section, "expected a single goal formula");
            goal = &section.items[1];
        } else {
            fail(section, "unsupported problem section '" + key + "'");
        }
    }
    if (p.domain_name.empty()) fail(header, "missing (:domain ...)");
    if (!goal) fail(header, "missing (:goal ...)");

    std::unordered_set<std::string> known;
    for (const auto& c : domain.constants) known.insert(c.name);
    for (const auto& o : p.objects) {
        if (!has_type(domain, o.type)) fail(header, "object '" + o.name + "' has undeclared type '" + o.type + "'");
        if (!known.insert(o.name).second) fail(header, "duplicate object '" + o.name + "'");
    }
    auto check_ground = [&](const Atom& atom, const SExpr& where) {
        check_atom(domain, atom, where);
        for (const auto& arg : atom.args) {
            if (!known.count(arg)) fail(where, "unknown object '" + arg + "'");
        }
    };
    for (const auto* item : init_items) {
        Atom atom = parse_atom(*item);
        check_ground(atom, *item);
        if (std::find(p.init.begin(), p.init.end(), atom) == p.init.end()) p.init.push_back(std::move(atom));
    }
    std::vector<Atom> goal_atoms;
    parse_condition(*goal, goal_atoms);
    for (auto& atom : goal_atoms) {
        check_ground(atom, *goal);
        if (std::find(p.goal.begin(), p.goal.end(), atom) == p.goal.end()) p.goal.push_back(std::move(atom));
    }
    return p;
}

std::set<std::string> detect_static(const DomainDef& domain) {
    std::set<std::string> result;
    for (const auto& p : domain.predicates) result.insert(p.name);
    for (const auto& a : domain.actions) {
        for (const auto& atom : a.add) result.erase(atom.predicate);
        for (const auto& atom : a.del) result.erase(atom.predicate);
    }
    return result;
}

std::string atom_name(const Atom& atom) {
    std::string s = "(" + atom.predicate;
    for (const auto& a : atom.args) s += " " + a;
    return s + ")";
}

namespace {

struct Grounder {
    const DomainDef& domain;
    const ProblemDef& problem;
    GroundingOptions options;

    std::vector<TypedName> objects;
    std::unordered_map<std::string, std::size_t> object_index;
    std::map<std::string, std::size_t> predicate_index;
    std::set<std::string> statics;
    std::unordered_set<std::string> init_names;

    struct Candidate {
        std::string name;
        std::vector<std::string> pre, add, del;
    };

    Grounder(const DomainDef& d, const ProblemDef& p, GroundingOptions o) : domain(d), problem(p), options(o) {
        for (const auto& c : d.constants) add_object(c);
        for (const auto& obj : p.objects) add_object(obj);
        for (std::size_t i = 0; i < d.predicates.size(); ++i) predicate_index[d.predicates[i].name] = i;
        statics = detect_static(d);
        for (const auto& a : p.init) init_names.insert(atom_name(a));
    }

    void add_object(const TypedName& obj) {
        if (object_index.emplace(obj.name, objects.size()).second) objects.push_back(obj);
    }

    std::vector<std::size_t> objects_of_type(const std::string& type) const {
        std::vector<std::size_t> out;
        for (std::size_t i = 0; i < objects.size(); ++i) {
            if (domain.is_subtype(objects[i].type, type)) out.push_back(i);
        }
        return out;
    }

    static std::string substitute(const Atom& atom, const std::map<std::string, std::string>& binding) {
        std::string s = "(" + atom.predicate;
        for (const auto& arg : atom.args) {
            auto it = binding.find(arg);
            s += " " + (it == binding.end() ? arg : it->second);
        }
        return s + ")";
    }

    // Ordering key: predicate declaration order, then object declaration order.
    std::vector<std::size_t> fact_key(const std::string& name) const {
        std::vector<std::size_t> key;
        std::istringstream in(name.substr(1, name.size() - 2));
        std::string word;
        in >> word;
        key.push_back(predicate_index.at(word));
        while (in >> word) key.push_back(object_index.at(word));
        return key;
    }

    void enumerate_groundings(const Predicate& pred, std::vector<std::string>& out) const {
        std::vector<std::vector<std::size_t>> domains;
        for (const auto& param : pred.params) domains.push_back(objects_of_type(param.type));
        std::vector<std::size_t> choice(domains.size(), 0);
        for (const auto& d : domains) {
            if (d.empty()) return;
        }
        for (;;) {
            std::string s = "(" + pred.name;
            for (std::size_t i = 0; i < domains.size(); ++i) s += " " + objects[domains[i][choice[i]]].name;
            out.push_back(s + ")");
            std::size_t i = domains.size();
            while (i > 0) {
                --i;
                if (++choice[i] < domains[i].size()) break;
                choice[i] = 0;
                if (i == 0) return;
            }
            if (domains.empty()) return;
        }
    }

    void instantiate(const ActionSchema& schema, std::vector<Candidate>& out) const {
        std::vector<std::vector<std::size_t>> domains;
        for (const auto& param : schema.params) domains.push_back(objects_of_type(param.type));
        // Static preconditions become checkable once their last variable is bound.
        std::vector<std::vector<const Atom*>> checks(schema.params.size() + 1);
        for (const auto& atom : schema.pre) {
            if (!statics.count(atom.predicate)) continue;
            std::size_t last = 0;
            for (const auto& arg : atom.args) {
                for (std::size_t i = 0; i < schema.params.size(); ++i) {
                    if (schema.params[i].name == arg) last = std::max(last, i + 1);
                }
            }
            checks[last].push_back(&atom);
        }
        std::map<std::string, std::string> binding;
        std::vector<bool> used(objects.size(), false);
        auto statics_hold = [&](std::size_t level) {
            return std::all_of(checks[level].begin(), checks[level].end(),
                               [&](const Atom* a) { return init_names.count(substitute(*a, binding)) > 0; });
        };
        auto recurse = [&](auto&& self, std::size_t level) -> void {
            if (level == schema.params.size()) {
                Candidate c;
                c.name = "(" + schema.name;
                for (const auto& p : schema.params) c.name += " " + binding[p.name];
                c.name += ")";
                for (const auto& a : schema.pre) c.pre.push_back(substitute(a, binding));
                for (const auto& a : schema.add) c.add.push_back(substitute(a, binding));
                for (const auto& a : schema.del) c.del.push_back(substitute(a, binding));
                out.push_back(std::move(c));
                return;
            }
            for (std::size_t obj : domains[level]) {
                if (options.distinct_args && used[obj]) continue;
                binding[schema.params[level].name] = objects[obj].name;
                used[obj] = true;
                if (statics_hold(level + 1)) self(self, level + 1);
                used[obj] = false;
            }
            binding.erase(schema.params[level].name);
        };
        if (statics_hold(0)) recurse(recurse, 0);
    }

    GroundedTask run() {
        std::vector<Candidate> candidates;
        for (const auto& schema : domain.actions) instantiate(schema, candidates);

        // Delete-relaxed fixpoint over the candidates, with precondition counters.
        std::unordered_map<std::string, std::vector<std::size_t>> waiting;
        std::vector<std::size_t> missing(candidates.size());
        for (std::size_t i = 0; i < candidates.size(); ++i) {
            std::set<std::string> distinct(candidates[i].pre.begin(), candidates[i].pre.end());
            missing[i] = distinct.size();
            for (const auto& f : distinct) waiting[f].push_back(i);
        }
        std::unordered_set<std::string> reached;
        std::vector<std::string> queue;
        std::vector<bool> fired(candidates.size(), false);
        auto reach = [&](const std::string& f) {
            if (reached.insert(f).second) queue.push_back(f);
        };
        for (const auto& a : problem.init) reach(atom_name(a));
        std::vector<std::size_t> ready;
        for (std::size_t i = 0; i < candidates.size(); ++i) {
            if (missing[i] == 0) ready.push_back(i);
        }
        while (!queue.empty() || !ready.empty()) {
            for (std::size_t i : ready) {
                if (fired[i]) continue;
                fired[i] = true;
                for (const auto& f : candidates[i].add) reach(f);
            }
            ready.clear();
            std::vector<std::string> batch;
            batch.swap(queue);
            for (const auto& f : batch) {
                auto it = waiting.find(f);
                if (it == waiting.end()) continue;
                for (std::size_t i : it->second) {
                    if (--missing[i] == 0) ready.push_back(i);
                }
            }
        }

        std::set<std::string> table(reached.begin(), reached.end());
        std::vector<std::string> static_groundings;
        for (const auto& pred : domain.predicates) {
            if (statics.count(pred.name)) enumerate_groundings(pred, static_groundings);
        }
        table.insert(static_groundings.begin(), static_groundings.end());
        for (const auto& g : problem.goal) {
            const auto name = atom_name(g);
            if (statics.count(g.predicate) && !init_names.count(name)) {
                throw GroundingError("goal fact " + name + " is statically false");
            }
            table.insert(name);
        }

        std::vector<std::string> names(table.begin(), table.end());
        std::vector<std::vector<std::size_t>> keys;
        std::vector<std::size_t> order(names.size());
        for (std::size_t i = 0; i < names.size(); ++i) {
            keys.push_back(fact_key(names[i]));
            order[i] = i;
        }
        std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return keys[a] < keys[b]; });
        std::vector<std::string> fact_names;
        std::unordered_map<std::string, FactId> ids;
        for (std::size_t i : order) {
            ids[names[i]] = static_cast<FactId>(fact_names.size());
            fact_names.push_back(names[i]);
        }

        std::vector<GroundAction> actions;
        for (std::size_t i = 0; i < candidates.size(); ++i) {
            if (!fired[i]) continue;
            GroundAction a;
            a.name = candidates[i].name;
            for (const auto& f : candidates[i].pre) a.pre.push_back(ids.at(f));
            for (const auto& f : candidates[i].add) a.add.push_back(ids.at(f));
            for (const auto& f : candidates[i].del) {
                if (auto it = ids.find(f); it != ids.end()) a.del.push_back(it->second);
            }
            actions.push_back(std::move(a));
        }
        std::vector<FactId> init;
        for (const auto& a : problem.init) init.push_back(ids.at(atom_name(a)));
        std::vector<FactId> goal;
        for (const auto& g : problem.goal) goal.push_back(ids.at(atom_name(g)));

        GroundedTask result{PlanningTask(std::move(fact_names), std::move(actions), init, std::move(goal)), {}};
        result.statics.static_predicates = statics;
        for (const auto& f : result.task.facts()) {
            const auto pred = f.name.substr(1, f.name.find_first_of(" )") - 1);
            if (!statics.count(pred)) continue;
            (result.task.init().contains(f.id) ? result.statics.static_true_facts
                                               : result.statics.static_false_facts)
                .push_back(f.id);
        }
        return result;
    }
};

void render_typed(std::ostream& out, const std::vector<TypedName>& names) {
    for (std::size_t i = 0; i < names.size(); ++i) {
        out << (i ? " " : "") << names[i].name;
        const bool last_of_group = i + 1 == names.size() || names[i + 1].type != names[i].type;
        if (last_of_group) out << " - " << names[i].type;
    }
}

void render_conjunction(std::ostream& out, const std::vector<Atom>& atoms, const std::vector<Atom>& negated = {}) {
    out << "(and";
    for (const auto& a : atoms) out << " " << atom_name(a);
    for (const auto& a : negated) out << " (not " << atom_name(a) << ")";
    out << ")";
}

}  // namespace

GroundedTask ground(const DomainDef& domain, const ProblemDef& problem, const GroundingOptions& options) {
    if (problem.domain_name != domain.name) {
        throw GroundingError("problem targets domain '" + problem.domain_name + "', not '" + domain.name + "'");
    }
    return Grounder(domain, problem, options).run();
}

std::string render_domain(const DomainDef& d) {
    std::ostringstream out;
    out << "(define (domain " << d.name << ")\n";
    if (!d.requirements.empty()) {
        out << "  (:requirements";
        for (const auto& r : d.requirements) out << " " << r;
        out << ")\n";
    }
    if (!d.types.empty()) {
        out << "  (:types ";
        render_typed(out, d.types);
        out << ")\n";
    }
    if (!d.constants.empty()) {
        out << "  (:constants ";
        render_typed(out, d.constants);
        out << ")\n";
    }
    out << "  (:predicates";
    for (const auto& p : d.predicates) {
        out << " (" << p.name;
        if (!p.params.empty()) {
            out << " ";
            render_typed(out, p.params);
        }
        out << ")";
    }
    out << ")\n";
    for (const auto& a : d.actions) {
        out << "  (:action " << a.name << "\n    :parameters (";
        render_typed(out, a.params);
        out << ")\n    :precondition ";
        render_conjunction(out, a.pre);
        out << "\n    :effect ";
        render_conjunction(out, a.add, a.del);
        out << ")\n";
    }
    out << ")\n";
    return out.str();
}

std::string render_problem(const ProblemDef& p) {
    std::ostringstream out;
    out << "(define (problem " << p.name << ")\n  (:domain " << p.domain_name << ")\n  (:objects ";
    render_typed(out, p.objects);
    out << ")\n  (:init";
    for (const auto& a : p.init) out << " " << atom_name(a);
    out << ")\n  (:goal ";
    render_conjunction(out, p.goal);
    out << "))\n";
    return out.str();
}

std::string dump_task(const PlanningTask& task) {
    std::ostringstream out;
    out << "; " << task.num_facts() << " facts, " << task.num_actions() << " actions\n";
    for (const auto& f : task.facts()) {
        out << f.id << " " << f.name << (task.init().contains(f.id) ? " *" : "") << "\n";
    }
    out << "goal:";
    for (FactId g : task.goal()) out << " " << task.fact(g).name;
    out << "\n";
    for (const auto& a : task.actions()) {
        out << "\n" << a.name << "\n";
        auto list = [&](const char* label, const std::vector<FactId>& ids) {
            out << "  " << label << ":";
            for (FactId f : ids) out << " " << task.fact(f).name;
            out << "\n";
        };
        list("pre", a.pre);
        list("add", a.add);
        list("del", a.del);
    }
    return out.str();
}

}  // namespace planq::pddl
