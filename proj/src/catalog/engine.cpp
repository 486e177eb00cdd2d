#include "rule_support.hpp"

#include "refdecomp/error.hpp"

#include <algorithm>
#include <charconv>
#include <map>

namespace refdecomp {

namespace catalog {

namespace {

const std::vector<std::string> kNamePool = {"tmp", "result", "value", "res",
                                            "acc", "temp",   "val",   "idx",
                                            "i",   "j",      "k",     "out"};

void collect_names(const MethodAst &m, std::vector<std::string> &ordered,
                   std::set<std::string> &seen) {
  auto add = [&](const std::string &s) {
    if (seen.insert(s).second)
      ordered.push_back(s);
  };
  add(m.name);
  for (const auto &p : m.params)
    add(p.name);
  walk(m, [&](const NodePtr &n, const NodePath &) {
    if (n->kind == Kind::Name || n->kind == Kind::Declarator ||
        n->kind == Kind::Foreach)
      add(n->text);
    return true;
  });
}

} // namespace

RuleContext::RuleContext(const MethodAst &ast_, const MethodAst *target_)
    : ast(ast_), target(target_), info(type_check(ast_)) {
  std::vector<std::string> unused;
  collect_names(ast, unused, names_);
  if (target) {
    std::vector<std::string> ordered;
    collect_names(*target, ordered, target_names_);
    for (const auto &n : ordered)
      if (!names_.count(n))
        fresh_.push_back(n);
  } else {
    for (const auto &n : kNamePool)
      if (!names_.count(n)) {
        fresh_.push_back(n);
        break;
      }
  }
}

NodePtr RuleContext::node(const NodePath &p) const {
  if (!try_resolve(ast, p))
    return nullptr;
  return resolve_path(ast, p);
}

RewriteRule describe(std::string id, std::string name, Tier tier, std::string lhs,
                     std::string rhs, std::vector<std::string> guards,
                     std::string inverse_id, std::vector<std::string> fresh) {
  RewriteRule r;
  r.id = std::move(id);
  r.name = std::move(name);
  r.tier = tier;
  r.lhs = std::move(lhs);
  r.rhs = std::move(rhs);
  r.guards = std::move(guards);
  r.fresh = std::move(fresh);
  r.invertible = !inverse_id.empty();
  r.inverse_id = std::move(inverse_id);
  return r;
}

// ---- expression helpers ------------------------------------------------------

const NodePtr &unparen(const NodePtr &n) {
  return n && n->kind == Kind::Paren ? unparen(n->kid(0)) : n;
}

bool side_effect_free(const NodePtr &n) {
  if (!n)
    return true;
  if (n->kind == Kind::Assign || n->kind == Kind::Prefix || n->kind == Kind::Postfix)
    return false;
  return std::all_of(n->kids.begin(), n->kids.end(), side_effect_free);
}

bool pure(const NodePtr &n) {
  if (!n)
    return true;
  switch (n->kind) {
  case Kind::Assign:
  case Kind::Prefix:
  case Kind::Postfix:
  case Kind::Index:
  case Kind::NewArray:
  case Kind::ArrayInit:
    return false;
  case Kind::Binary:
    if (n->text == "/" || n->text == "%")
      return false;
    break;
  default:
    break;
  }
  return std::all_of(n->kids.begin(), n->kids.end(), pure);
}

std::optional<std::int64_t> integral_constant(const NodePtr &n0) {
  const NodePtr &n = unparen(n0);
  bool negated = false;
  const Node *lit = n.get();
  if (n->kind == Kind::Unary && n->text == "-" && n->kid(0)->kind == Kind::Literal) {
    negated = true;
    lit = n->kid(0).get();
  }
  if (lit->kind != Kind::Literal || (lit->lit != LitKind::Int && lit->lit != LitKind::Long))
    return std::nullopt;
  auto v = integer_literal_value(lit->text);
  if (!v)
    return std::nullopt;
  if (lit->lit == LitKind::Int) {
    auto raw = static_cast<std::int64_t>(*v);
    return static_cast<std::int32_t>(static_cast<std::uint32_t>(negated ? -raw : raw));
  }
  auto l = static_cast<std::int64_t>(*v);
  return negated ? static_cast<std::int64_t>(0ull - static_cast<std::uint64_t>(l)) : l;
}

bool is_bool_literal(const NodePtr &n, bool value) {
  const NodePtr &u = unparen(n);
  return u->kind == Kind::Literal && u->lit == LitKind::Bool &&
         u->text == (value ? "true" : "false");
}

NodePtr assemble(Kind kind, std::string text, std::vector<NodePtr> kids, Type type) {
  auto n = std::make_shared<Node>();
  n->kind = kind;
  n->text = std::move(text);
  n->type = type;
  n->kids = std::move(kids);
  for (std::size_t i = 0; i < n->kids.size(); ++i)
    if (n->kids[i])
      n->kids[i] = paren_if_needed(*n, i, n->kids[i]);
  return n;
}

NodePtr assemble_like(const NodePtr &proto, std::vector<NodePtr> kids) {
  auto n = std::make_shared<Node>(*proto);
  n->kids = std::move(kids);
  for (std::size_t i = 0; i < n->kids.size(); ++i)
    if (n->kids[i])
      n->kids[i] = paren_if_needed(*n, i, n->kids[i]);
  return n;
}

namespace {

// Which ambiguous parens the running rewrite keeps; see operand().
struct ParenChoice {
  unsigned mask = 0;
  int seen = 0;
};
thread_local ParenChoice *paren_choice = nullptr;

class ParenScope {
public:
  explicit ParenScope(unsigned mask) : prev_(paren_choice) {
    state_.mask = mask;
    paren_choice = &state_;
  }
  ~ParenScope() { paren_choice = prev_; }
  ParenScope(const ParenScope &) = delete;
  ParenScope &operator=(const ParenScope &) = delete;

  int seen() const { return state_.seen; }
  bool all_used() const { return state_.seen >= 32 || (state_.mask >> state_.seen) == 0; }

private:
  ParenChoice state_;
  ParenChoice *prev_;
};

} // namespace

namespace {

/// Consumes one bit of the running paren mask.
bool keep_paren_choice() {
  if (!paren_choice)
    return false;
  int bit = paren_choice->seen++;
  return bit < 32 && ((paren_choice->mask >> bit) & 1u) != 0;
}

} // namespace

NodePtr operand(const NodePtr &parent, std::size_t slot) {
  const NodePtr &k = parent->kid(slot);
  if (k->kind != Kind::Paren || !needs_paren(*parent, slot, *k->kid(0)))
    return k;
  // The paren is required here, so it may also have been written on purpose;
  // the caller's choice mask decides whether it travels with the operand.
  if (keep_paren_choice())
    return k;
  return k->kid(0);
}

NodePtr negate(const NodePtr &cond, bool strip) {
  if (strip && cond->kind == Kind::Unary && cond->text == "!")
    return operand(cond, 0);
  return assemble(Kind::Unary, "!", {cond});
}

MethodAst replace_expr(const MethodAst &ast, const NodePath &path, NodePtr repl) {
  const NodePtr &parent = resolve_path(ast, path.parent());
  auto slot = static_cast<std::size_t>(path.back());
  const NodePtr &old = parent->kid(slot);
  if (parent->kind == Kind::Paren && path.steps.size() >= 2) {
    NodePath pp = path.parent();
    const NodePtr &gp = resolve_path(ast, pp.parent());
    auto gslot = static_cast<std::size_t>(pp.back());
    if (needs_paren(*gp, gslot, *old) && !needs_paren(*gp, gslot, *repl) &&
        !keep_paren_choice())
      return replace_at(ast, pp, std::move(repl));
  }
  return replace_at(ast, path, paren_if_needed(*parent, slot, std::move(repl)));
}

// ---- statement helpers ---------------------------------------------------------

bool in_stmt_list(const MethodAst &ast, const NodePath &path) {
  if (path.empty())
    return false;
  const Node *parent = try_resolve(ast, path.parent());
  return parent && is_stmt_list(*parent) &&
         static_cast<std::size_t>(path.back()) >= first_stmt_index(*parent);
}

MethodAst splice(const MethodAst &ast, const NodePath &first, std::size_t count,
                 std::vector<NodePtr> stmts) {
  NodePath list = first.parent();
  const NodePtr &parent = resolve_path(ast, list);
  auto kids = parent->kids;
  auto at = kids.begin() + first.back();
  at = kids.erase(at, at + static_cast<std::ptrdiff_t>(count));
  kids.insert(at, stmts.begin(), stmts.end());
  return replace_at(ast, list, with_kids(parent, std::move(kids)));
}

std::vector<NodePtr> body_stmts(const NodePtr &body) {
  if (body->kind == Kind::Block)
    return body->kids;
  return {body};
}

NodePtr rewrite_tree(const NodePtr &n, const std::function<NodePtr(const NodePtr &)> &fn) {
  if (!n)
    return n;
  if (auto r = fn(n))
    return r;
  bool changed = false;
  std::vector<NodePtr> kids;
  kids.reserve(n->kids.size());
  for (const auto &k : n->kids) {
    kids.push_back(rewrite_tree(k, fn));
    changed |= kids.back() != k;
  }
  return changed ? with_kids(n, std::move(kids)) : n;
}

MethodAst rewrite_body(const MethodAst &ast,
                       const std::function<NodePtr(const NodePtr &)> &fn) {
  MethodAst out = ast;
  out.body = rewrite_tree(ast.body, fn);
  return out;
}

int count_uses(const RuleContext &ctx, const NodePtr &n, int symbol) {
  int count = 0;
  NodePath p;
  walk(n, p, [&](const NodePtr &k, const NodePath &) {
    if (k->kind == Kind::Name && ctx.symbol_of(k) == symbol)
      ++count;
    return true;
  });
  return count;
}

namespace {

const NodePtr *store_target(const NodePtr &n) {
  if (n->kind == Kind::Assign || n->kind == Kind::Prefix || n->kind == Kind::Postfix)
    return &unparen(n->kid(0));
  return nullptr;
}

} // namespace

bool writes_symbol(const RuleContext &ctx, const NodePtr &n, int symbol) {
  bool found = false;
  NodePath p;
  walk(n, p, [&](const NodePtr &k, const NodePath &) {
    if (const NodePtr *t = store_target(k))
      if ((*t)->kind == Kind::Name && ctx.symbol_of(*t) == symbol)
        found = true;
    return !found;
  });
  return found;
}

bool writes_array_element(const NodePtr &n) {
  bool found = false;
  NodePath p;
  walk(n, p, [&](const NodePtr &k, const NodePath &) {
    if (const NodePtr *t = store_target(k))
      if ((*t)->kind == Kind::Index)
        found = true;
    return !found;
  });
  return found;
}

bool contains_kind(const NodePtr &n, Kind kind) {
  bool found = false;
  NodePath p;
  walk(n, p, [&](const NodePtr &k, const NodePath &) {
    if (k->kind == kind)
      found = true;
    return !found;
  });
  return found;
}

bool negated_literal(const MethodAst &ast, const NodePath &path) {
  if (path.empty())
    return false;
  const Node *n = try_resolve(ast, path);
  const Node *parent = try_resolve(ast, path.parent());
  return n && parent && n->kind == Kind::Literal && parent->kind == Kind::Unary &&
         parent->text == "-";
}

bool store_slot(const MethodAst &ast, const NodePath &path) {
  if (path.empty() || path.back() != 0)
    return false;
  const Node *parent = try_resolve(ast, path.parent());
  return parent && (parent->kind == Kind::Assign || parent->kind == Kind::Prefix ||
                    parent->kind == Kind::Postfix);
}

bool is_body_slot(const Node &parent, std::size_t slot) {
  switch (parent.kind) {
  case Kind::If: return slot >= 1;
  case Kind::While:
  case Kind::Foreach: return slot == 1;
  case Kind::For: return slot == 3;
  default: return false;
  }
}

std::string binding_of(const Bindings &b, std::string_view key) {
  for (const auto &[k, v] : b)
    if (k == key)
      return v;
  return {};
}

std::string text_of(const NodePtr &n) { return print_node(n); }

std::string text_of(const std::vector<NodePtr> &stmts) {
  std::string out;
  for (const auto &s : stmts) {
    if (!out.empty())
      out += ' ';
    out += print_node(s);
  }
  return out;
}

std::vector<NodePtr> parse_stmts(const std::string &text) {
  return parse_method_unchecked("int frag() {" + text + "}").body->kids;
}

NodePtr parse_expr(const std::string &text) {
  auto body = parse_method_unchecked("int frag() { return " + text + "; }").body;
  return body->kid(0)->kid(0);
}

// ---- registry -----------------------------------------------------------------

namespace {

struct Registry {
  std::vector<RuleImpl> impls;
  std::vector<RewriteRule> rules;
  std::map<std::string, std::size_t, std::less<>> by_id;

  Registry() {
    add_detector_rules(impls);
    add_expression_rules(impls);
    add_control_rules(impls);
    add_declaration_rules(impls);
    std::sort(impls.begin(), impls.end(),
              [](const RuleImpl &a, const RuleImpl &b) { return a.meta.id < b.meta.id; });
    for (std::size_t i = 0; i < impls.size(); ++i) {
      if (!by_id.emplace(impls[i].meta.id, i).second)
        throw Error(ErrorKind::InvalidArgument, "duplicate rule id " + impls[i].meta.id);
      rules.push_back(impls[i].meta);
    }
  }
};

const Registry &registry() {
  static const Registry r;
  return r;
}

const RuleImpl &impl_of(std::string_view id) {
  const auto &reg = registry();
  auto it = reg.by_id.find(id);
  if (it == reg.by_id.end())
    throw Error(ErrorKind::InvalidArgument, "unknown rule '" + std::string(id) + "'");
  return reg.impls[it->second];
}

std::vector<SiteSpec> default_sites(const RuleContext &ctx, int variants) {
  std::vector<SiteSpec> out;
  walk(ctx.ast, [&](const NodePtr &, const NodePath &p) {
    for (int v = 0; v < variants; ++v)
      out.push_back(SiteSpec{p, {}, v});
    return true;
  });
  return out;
}

bool acceptable(const MethodAst &result, const std::vector<Token> &before) {
  return well_formed(result) && type_checks(result) && method_tokens(result) != before;
}

constexpr const char *kParensKey = "parens";
constexpr int kMaxParenChoices = 4;

struct Attempt {
  std::optional<MethodAst> result;
  int choices = 0;
};

/// Runs the rewrite with the given paren mask; rejects masks that name
/// parens the rewrite never met.
Attempt attempt(const RuleImpl &impl, const RuleContext &ctx, const SiteSpec &spec,
                unsigned mask) {
  ParenScope scope(mask);
  Attempt a;
  a.result = impl.rewrite(ctx, spec);
  a.choices = scope.seen();
  if (!scope.all_used())
    a.result.reset();
  return a;
}

} // namespace

} // namespace catalog

const char *to_string(Tier t) { return t == Tier::Detector ? "detector" : "extended"; }

std::string MatchSite::binding(std::string_view key) const {
  return catalog::binding_of(bindings, key);
}

std::string MatchSite::summary() const {
  std::string out = rule_id + " at " + path.str();
  for (const auto &[k, v] : bindings)
    out += " " + k + "=" + v;
  if (variant)
    out += " #" + std::to_string(variant);
  return out;
}

const std::vector<RewriteRule> &list_rules() { return catalog::registry().rules; }

const RewriteRule &rule_by_id(std::string_view id) { return catalog::impl_of(id).meta; }

std::uint64_t method_fingerprint(const MethodAst &ast) {
  std::uint64_t h = structural_hash(ast.body);
  auto mix = [&h](std::uint64_t v) { h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2); };
  mix(std::hash<std::string>{}(ast.name));
  mix(static_cast<std::uint64_t>(ast.return_type.base) * 2 + ast.return_type.array);
  for (const auto &p : ast.params) {
    mix(std::hash<std::string>{}(p.name));
    mix(static_cast<std::uint64_t>(p.type.base) * 4 + p.type.array * 2 + p.c_style_array);
  }
  return h;
}

std::vector<Rewrite> find_rewrites(const RewriteRule &rule, const MethodAst &ast,
                                   const MethodAst *target) {
  const auto &impl = catalog::impl_of(rule.id);
  catalog::RuleContext ctx(ast, target);
  auto before = method_tokens(ast);
  auto fp = method_fingerprint(ast);
  auto specs = impl.sites ? impl.sites(ctx) : catalog::default_sites(ctx, impl.variants);
  std::vector<Rewrite> out;
  for (auto &spec : specs) {
    catalog::Attempt first;
    try {
      first = catalog::attempt(impl, ctx, spec, 0);
    } catch (const Error &) {
      continue;
    }
    if (!first.result || !catalog::acceptable(*first.result, before))
      continue;
    auto plain = method_tokens(*first.result);
    out.push_back(Rewrite{MatchSite{rule.id, spec.path, spec.bindings, spec.variant, fp},
                          std::move(*first.result)});
    unsigned limit = 1u << std::min(first.choices, catalog::kMaxParenChoices);
    for (unsigned mask = 1; mask < limit; ++mask) {
      catalog::Attempt alt;
      try {
        alt = catalog::attempt(impl, ctx, spec, mask);
      } catch (const Error &) {
        continue;
      }
      if (!alt.result || !catalog::acceptable(*alt.result, before) ||
          method_tokens(*alt.result) == plain)
        continue;
      auto bindings = spec.bindings;
      bindings.emplace_back(catalog::kParensKey, std::to_string(mask));
      out.push_back(Rewrite{MatchSite{rule.id, spec.path, std::move(bindings), spec.variant, fp},
                            std::move(*alt.result)});
    }
  }
  return out;
}

std::vector<MatchSite> find_matches(const RewriteRule &rule, const MethodAst &ast,
                                    const MethodAst *target) {
  std::vector<MatchSite> out;
  for (auto &r : find_rewrites(rule, ast, target))
    out.push_back(std::move(r.site));
  return out;
}

MethodAst apply_match(const MethodAst &ast, const MatchSite &site) {
  const auto &impl = catalog::impl_of(site.rule_id);
  if (method_fingerprint(ast) != site.fingerprint)
    throw Error(ErrorKind::StaleSite,
                "site " + site.summary() + " was computed on a different method");
  catalog::RuleContext ctx(ast, nullptr);
  catalog::SiteSpec spec{site.path, site.bindings, site.variant};
  unsigned mask = 0;
  if (auto m = site.binding(catalog::kParensKey); !m.empty()) {
    auto [end, ec] = std::from_chars(m.data(), m.data() + m.size(), mask);
    if (ec != std::errc{} || end != m.data() + m.size())
      throw Error(ErrorKind::GuardViolation, site.summary() + ": malformed paren choice");
  }
  std::optional<MethodAst> result;
  try {
    result = catalog::attempt(impl, ctx, spec, mask).result;
  } catch (const Error &e) {
    throw Error(ErrorKind::GuardViolation, site.summary() + ": " + e.what());
  }
  if (!result)
    throw Error(ErrorKind::GuardViolation, site.summary() + ": guard no longer holds");
  if (!catalog::acceptable(*result, method_tokens(ast)))
    throw Error(ErrorKind::GuardViolation,
                site.summary() + ": result is not a valid distinct method");
  return std::move(*result);
}

} // namespace refdecomp
