#include "refdecomp/equivalence.hpp"
#include "refdecomp/error.hpp"
#include "refdecomp/syntax.hpp"

#include <cmath>
#include <limits>

namespace refdecomp {

namespace {

enum class Op : std::uint8_t {
  // expressions
  Const,
  Load,
  Convert,
  Neg,
  Not,
  Arith,
  Compare,
  And,
  Or,
  Concat,
  Ternary,
  Index,
  Length,
  NewArray,
  ArrayInit,
  StoreVar,
  StoreIndex,
  IncVar,
  IncIndex,
  // statements
  Seq,
  Decl,
  Eval,
  If,
  Switch,
  Case,
  For,
  Foreach,
  While,
  Return,
  Break,
  Nop,
};

enum class Bin : std::uint8_t { Add, Sub, Mul, Div, Rem, Lt, Le, Gt, Ge, Eq, Ne };

/// Slot-resolved node. Field use per op:
///   Convert    num = from, type = to
///   Arith      num = computation type, bin = operator
///   Compare    num = operand type (promoted), bin = operator
///   StoreVar   slot, kids = [value]; compound when flag (bin, calc)
///   StoreIndex kids = [array, index, value], same compound encoding
///   IncVar     slot, num = type, delta, flag = prefix
///   Case       flag = default, labels = constant values, kids = stmts
struct CNode {
  Op op = Op::Nop;
  BaseType num = BaseType::Int;
  BaseType calc = BaseType::Int;
  Type type{};
  Bin bin = Bin::Add;
  bool flag = false;
  int delta = 0;
  int slot = -1;
  Value constant;
  std::vector<Value> labels;
  std::vector<CNode> kids;
};

struct Fault {
  RuntimeErrorKind kind;
};
struct OutOfBudget {};

Value default_value(Type t) {
  if (t.array) {
    auto a = std::make_shared<ArrayValue>();
    a->element = t.element();
    return a;
  }
  switch (t.base) {
  case BaseType::Int: return std::int32_t{0};
  case BaseType::Long: return std::int64_t{0};
  case BaseType::Double: return 0.0;
  case BaseType::Boolean: return false;
  case BaseType::String: return std::string();
  }
  return std::int32_t{0};
}

template <typename I> I saturate(double d) {
  if (std::isnan(d))
    return 0;
  if (d <= static_cast<double>(std::numeric_limits<I>::min()))
    return std::numeric_limits<I>::min();
  if (d >= static_cast<double>(std::numeric_limits<I>::max()))
    return std::numeric_limits<I>::max();
  return static_cast<I>(d);
}

Value convert(const Value &v, BaseType to) {
  if (const auto *i = std::get_if<std::int32_t>(&v)) {
    switch (to) {
    case BaseType::Long: return static_cast<std::int64_t>(*i);
    case BaseType::Double: return static_cast<double>(*i);
    default: return v;
    }
  }
  if (const auto *l = std::get_if<std::int64_t>(&v)) {
    switch (to) {
    case BaseType::Int: return static_cast<std::int32_t>(static_cast<std::uint32_t>(*l));
    case BaseType::Double: return static_cast<double>(*l);
    default: return v;
    }
  }
  if (const auto *d = std::get_if<double>(&v)) {
    switch (to) {
    case BaseType::Int: return saturate<std::int32_t>(*d);
    case BaseType::Long: return saturate<std::int64_t>(*d);
    default: return v;
    }
  }
  return v;
}

std::string concat_piece(const Value &v) {
  if (const auto *s = std::get_if<std::string>(&v))
    return *s;
  if (const auto *i = std::get_if<std::int32_t>(&v))
    return std::to_string(*i);
  if (const auto *l = std::get_if<std::int64_t>(&v))
    return std::to_string(*l);
  if (const auto *d = std::get_if<double>(&v))
    return java_double_string(*d);
  if (const auto *b = std::get_if<bool>(&v))
    return *b ? "true" : "false";
  return display(v);
}

template <typename I> I wrap_arith(Bin op, I a, I b) {
  using U = std::make_unsigned_t<I>;
  switch (op) {
  case Bin::Add: return static_cast<I>(static_cast<U>(a) + static_cast<U>(b));
  case Bin::Sub: return static_cast<I>(static_cast<U>(a) - static_cast<U>(b));
  case Bin::Mul: return static_cast<I>(static_cast<U>(a) * static_cast<U>(b));
  case Bin::Div:
    if (b == 0)
      throw Fault{RuntimeErrorKind::DivByZero};
    if (a == std::numeric_limits<I>::min() && b == -1)
      return a;
    return a / b;
  case Bin::Rem:
    if (b == 0)
      throw Fault{RuntimeErrorKind::DivByZero};
    if (b == -1)
      return 0;
    return a % b;
  default: return 0;
  }
}

double double_arith(Bin op, double a, double b) {
  switch (op) {
  case Bin::Add: return a + b;
  case Bin::Sub: return a - b;
  case Bin::Mul: return a * b;
  case Bin::Div: return a / b;
  case Bin::Rem: return std::fmod(a, b);
  default: return 0;
  }
}

Value arith(Bin op, BaseType t, const Value &a, const Value &b) {
  switch (t) {
  case BaseType::Int:
    return wrap_arith<std::int32_t>(op, std::get<std::int32_t>(a), std::get<std::int32_t>(b));
  case BaseType::Long:
    return wrap_arith<std::int64_t>(op, std::get<std::int64_t>(a), std::get<std::int64_t>(b));
  default:
    return double_arith(op, std::get<double>(a), std::get<double>(b));
  }
}

template <typename T> bool ordered(Bin op, T a, T b) {
  switch (op) {
  case Bin::Lt: return a < b;
  case Bin::Le: return a <= b;
  case Bin::Gt: return a > b;
  case Bin::Ge: return a >= b;
  case Bin::Eq: return a == b;
  case Bin::Ne: return a != b;
  default: return false;
  }
}

bool compare(Bin op, BaseType t, const Value &a, const Value &b) {
  switch (t) {
  case BaseType::Int: return ordered(op, std::get<std::int32_t>(a), std::get<std::int32_t>(b));
  case BaseType::Long: return ordered(op, std::get<std::int64_t>(a), std::get<std::int64_t>(b));
  case BaseType::Double: return ordered(op, std::get<double>(a), std::get<double>(b));
  case BaseType::Boolean: return ordered(op, std::get<bool>(a), std::get<bool>(b));
  case BaseType::String:
    return op == Bin::Eq ? std::get<std::string>(a) == std::get<std::string>(b)
                         : std::get<std::string>(a) != std::get<std::string>(b);
  }
  return false;
}

Bin bin_of(std::string_view op) {
  if (op == "+") return Bin::Add;
  if (op == "-") return Bin::Sub;
  if (op == "*") return Bin::Mul;
  if (op == "/") return Bin::Div;
  if (op == "%") return Bin::Rem;
  if (op == "<") return Bin::Lt;
  if (op == "<=") return Bin::Le;
  if (op == ">") return Bin::Gt;
  if (op == ">=") return Bin::Ge;
  if (op == "==") return Bin::Eq;
  return Bin::Ne;
}

BaseType promote(Type a, Type b) {
  if (a.base == BaseType::Double || b.base == BaseType::Double)
    return BaseType::Double;
  if (a.base == BaseType::Long || b.base == BaseType::Long)
    return BaseType::Long;
  return BaseType::Int;
}

Value literal_value(const Node &n, bool negated) {
  switch (n.lit) {
  case LitKind::Int: {
    auto v = static_cast<std::uint32_t>(*integer_literal_value(n.text));
    return static_cast<std::int32_t>(negated ? 0u - v : v);
  }
  case LitKind::Long: {
    auto v = *integer_literal_value(n.text);
    return static_cast<std::int64_t>(negated ? 0ull - v : v);
  }
  case LitKind::Double: {
    double d = *double_literal_value(n.text);
    return negated ? -d : d;
  }
  case LitKind::Bool: return n.text == "true";
  case LitKind::String: return string_literal_value(n.text);
  }
  return std::int32_t{0};
}

class Compiler {
public:
  explicit Compiler(const MethodAst &m) : info_(type_check(m)), ret_(m.return_type) {}

  CNode body(const MethodAst &m) { return stmt(m.body); }
  std::size_t slots() const { return info_.symbol_names.size(); }

private:
  TypeInfo info_;
  Type ret_;

  Type type_of(const NodePtr &n) const { return info_.type_of(n); }

  int slot_of(const NodePtr &n) const {
    int s = info_.symbol_of(n.get());
    if (s < 0)
      throw Error(ErrorKind::Type, "unresolved symbol '" + n->text + "'");
    return s;
  }

  CNode to(CNode e, Type from, Type target) {
    if (from == target || from.array || target.array)
      return e;
    CNode c;
    c.op = Op::Convert;
    c.num = from.base;
    c.type = target;
    c.kids.push_back(std::move(e));
    return c;
  }

  CNode expr_as(const NodePtr &n, Type target) { return to(expr(n), type_of(n), target); }

  static const NodePtr &unparen(const NodePtr &n) {
    return n->kind == Kind::Paren ? unparen(n->kid(0)) : n;
  }

  CNode expr(const NodePtr &n) {
    CNode c;
    c.type = type_of(n);
    switch (n->kind) {
    case Kind::Literal:
      c.op = Op::Const;
      c.constant = literal_value(*n, false);
      return c;
    case Kind::Name:
      c.op = Op::Load;
      c.slot = slot_of(n);
      return c;
    case Kind::Paren:
      return expr(n->kid(0));
    case Kind::Unary:
      if (n->text == "!") {
        c.op = Op::Not;
        c.kids.push_back(expr(n->kid(0)));
        return c;
      }
      if (n->kid(0)->kind == Kind::Literal) {
        c.op = Op::Const;
        c.constant = literal_value(*n->kid(0), true);
        return c;
      }
      c.op = Op::Neg;
      c.num = c.type.base;
      c.kids.push_back(expr(n->kid(0)));
      return c;
    case Kind::Binary: {
      const auto &op = n->text;
      Type a = type_of(n->kid(0)), b = type_of(n->kid(1));
      if (op == "&&" || op == "||") {
        c.op = op == "&&" ? Op::And : Op::Or;
        c.kids.push_back(expr(n->kid(0)));
        c.kids.push_back(expr(n->kid(1)));
        return c;
      }
      if (op == "+" && c.type.is(BaseType::String)) {
        c.op = Op::Concat;
        c.kids.push_back(expr(n->kid(0)));
        c.kids.push_back(expr(n->kid(1)));
        return c;
      }
      c.bin = bin_of(op);
      if (c.bin >= Bin::Lt) {
        c.op = Op::Compare;
        c.num = a.is_numeric() ? promote(a, b) : a.base;
      } else {
        c.op = Op::Arith;
        c.num = c.type.base;
      }
      Type common{c.num, false};
      c.kids.push_back(a.is_numeric() ? expr_as(n->kid(0), common) : expr(n->kid(0)));
      c.kids.push_back(b.is_numeric() ? expr_as(n->kid(1), common) : expr(n->kid(1)));
      return c;
    }
    case Kind::Ternary:
      c.op = Op::Ternary;
      c.kids.push_back(expr(n->kid(0)));
      c.kids.push_back(expr_as(n->kid(1), c.type));
      c.kids.push_back(expr_as(n->kid(2), c.type));
      return c;
    case Kind::Cast:
      return expr_as(n->kid(0), n->type);
    case Kind::Index:
      c.op = Op::Index;
      c.kids.push_back(expr(n->kid(0)));
      c.kids.push_back(expr(n->kid(1)));
      return c;
    case Kind::Length:
      c.op = Op::Length;
      c.kids.push_back(expr(n->kid(0)));
      return c;
    case Kind::NewArray:
      c.op = Op::NewArray;
      c.kids.push_back(expr(n->kid(0)));
      return c;
    case Kind::ArrayInit:
      c.op = Op::ArrayInit;
      for (const auto &k : n->kids)
        c.kids.push_back(expr_as(k, n->type));
      return c;
    case Kind::Assign:
      return assign(n, c.type);
    case Kind::Prefix:
    case Kind::Postfix: {
      const auto &target = unparen(n->kid(0));
      c.flag = n->kind == Kind::Prefix;
      c.delta = n->text == "++" ? 1 : -1;
      c.num = c.type.base;
      if (target->kind == Kind::Name) {
        c.op = Op::IncVar;
        c.slot = slot_of(target);
      } else {
        c.op = Op::IncIndex;
        c.kids.push_back(expr(target->kid(0)));
        c.kids.push_back(expr(target->kid(1)));
      }
      return c;
    }
    default:
      throw Error(ErrorKind::Type, std::string("cannot evaluate ") + to_string(n->kind));
    }
  }

  CNode assign(const NodePtr &n, Type target_type) {
    CNode c;
    c.type = target_type;
    c.num = target_type.base;
    const auto &target = unparen(n->kid(0));
    const auto &value = n->kid(1);
    if (target->kind == Kind::Name) {
      c.op = Op::StoreVar;
      c.slot = slot_of(target);
    } else {
      c.op = Op::StoreIndex;
      c.kids.push_back(expr(target->kid(0)));
      c.kids.push_back(expr(target->kid(1)));
    }
    if (n->text == "=") {
      c.kids.push_back(expr_as(value, target_type));
      return c;
    }
    c.flag = true;
    std::string op = n->text.substr(0, n->text.size() - 1);
    Type vt = type_of(value);
    if (target_type.is(BaseType::String)) {
      c.kids.push_back(expr(value));
      return c;
    }
    c.bin = bin_of(op);
    c.calc = promote(target_type, vt);
    c.kids.push_back(expr_as(value, Type{c.calc, false}));
    return c;
  }

  CNode stmts_of(const Node &n, std::size_t from) {
    CNode c;
    c.op = Op::Seq;
    for (std::size_t i = from; i < n.size(); ++i)
      c.kids.push_back(stmt(n.kid(i)));
    return c;
  }

  CNode stmt(const NodePtr &n) {
    CNode c;
    switch (n->kind) {
    case Kind::Block:
      return stmts_of(*n, 0);
    case Kind::VarDecl: {
      c.op = Op::Seq;
      c.flag = true; // counts as one statement
      for (const auto &d : n->kids) {
        CNode decl;
        decl.op = Op::Decl;
        decl.slot = slot_of(d);
        decl.type = info_.symbol_types[static_cast<std::size_t>(decl.slot)];
        if (d->size())
          decl.kids.push_back(expr_as(d->kid(0), decl.type));
        c.kids.push_back(std::move(decl));
      }
      return c;
    }
    case Kind::ExprStmt:
      c.op = Op::Eval;
      c.kids.push_back(expr(n->kid(0)));
      return c;
    case Kind::If:
      c.op = Op::If;
      c.kids.push_back(expr(n->kid(0)));
      c.kids.push_back(stmt(n->kid(1)));
      if (n->size() > 2)
        c.kids.push_back(stmt(n->kid(2)));
      return c;
    case Kind::Switch: {
      c.op = Op::Switch;
      Type st = type_of(n->kid(0));
      c.num = st.base;
      c.kids.push_back(expr(n->kid(0)));
      for (std::size_t i = 1; i < n->size(); ++i) {
        const auto &arm = *n->kid(i);
        CNode a = stmts_of(arm, first_stmt_index(arm));
        a.op = Op::Case;
        a.flag = arm.flag;
        for (std::size_t l = 0; l < arm.count; ++l) {
          CNode label = expr_as(arm.kid(l), st);
          a.labels.push_back(label.op == Op::Const ? label.constant : Value{});
        }
        c.kids.push_back(std::move(a));
      }
      return c;
    }
    case Kind::For: {
      c.op = Op::For;
      const auto &init = n->kid(0);
      if (init->kind == Kind::VarDecl) {
        c.kids.push_back(stmt(init));
      } else {
        CNode seq;
        seq.op = Op::Seq;
        for (const auto &e : init->kids) {
          CNode ev;
          ev.op = Op::Eval;
          ev.kids.push_back(expr(e));
          seq.kids.push_back(std::move(ev));
        }
        c.kids.push_back(std::move(seq));
      }
      if (n->kid(1)->kind == Kind::Empty) {
        CNode t;
        t.op = Op::Const;
        t.constant = true;
        c.kids.push_back(std::move(t));
      } else {
        c.kids.push_back(expr(n->kid(1)));
      }
      CNode update;
      update.op = Op::Seq;
      for (const auto &e : n->kid(2)->kids)
        update.kids.push_back(expr(e));
      c.kids.push_back(std::move(update));
      c.kids.push_back(stmt(n->kid(3)));
      return c;
    }
    case Kind::Foreach:
      c.op = Op::Foreach;
      c.slot = slot_of(n);
      c.kids.push_back(expr(n->kid(0)));
      c.kids.push_back(stmt(n->kid(1)));
      return c;
    case Kind::While:
      c.op = Op::While;
      c.kids.push_back(expr(n->kid(0)));
      c.kids.push_back(stmt(n->kid(1)));
      return c;
    case Kind::Return:
      c.op = Op::Return;
      c.kids.push_back(expr_as(n->kid(0), ret_));
      return c;
    case Kind::Break:
      c.op = Op::Break;
      return c;
    case Kind::Empty:
      c.op = Op::Nop;
      return c;
    default:
      throw Error(ErrorKind::Type, std::string("cannot execute ") + to_string(n->kind));
    }
  }
};

enum class Flow : std::uint8_t { Normal, Return, Break };

class Machine {
public:
  Machine(std::size_t slots, std::uint64_t budget) : frame_(slots), budget_(budget) {}

  std::vector<Value> frame_;
  Value result_;

  void tick(std::uint64_t n = 1) {
    steps_ += n;
    if (steps_ > budget_)
      throw OutOfBudget{};
  }

  Value eval(const CNode &c) {
    switch (c.op) {
    case Op::Const: return c.constant;
    case Op::Load: return frame_[static_cast<std::size_t>(c.slot)];
    case Op::Convert: return convert(eval(c.kids[0]), c.type.base);
    case Op::Not: return !std::get<bool>(eval(c.kids[0]));
    case Op::Neg: {
      Value v = eval(c.kids[0]);
      switch (c.num) {
      case BaseType::Int:
        return static_cast<std::int32_t>(0u - static_cast<std::uint32_t>(std::get<std::int32_t>(v)));
      case BaseType::Long:
        return static_cast<std::int64_t>(0ull - static_cast<std::uint64_t>(std::get<std::int64_t>(v)));
      default: return -std::get<double>(v);
      }
    }
    case Op::Arith: {
      Value a = eval(c.kids[0]);
      Value b = eval(c.kids[1]);
      return arith(c.bin, c.num, a, b);
    }
    case Op::Compare: {
      Value a = eval(c.kids[0]);
      Value b = eval(c.kids[1]);
      return compare(c.bin, c.num, a, b);
    }
    case Op::And: return std::get<bool>(eval(c.kids[0])) && std::get<bool>(eval(c.kids[1]));
    case Op::Or: return std::get<bool>(eval(c.kids[0])) || std::get<bool>(eval(c.kids[1]));
    case Op::Concat: {
      std::string a = concat_piece(eval(c.kids[0]));
      return a + concat_piece(eval(c.kids[1]));
    }
    case Op::Ternary:
      return std::get<bool>(eval(c.kids[0])) ? eval(c.kids[1]) : eval(c.kids[2]);
    case Op::Index: {
      ArrayRef a = std::get<ArrayRef>(eval(c.kids[0]));
      auto i = std::get<std::int32_t>(eval(c.kids[1]));
      return element(a, i);
    }
    case Op::Length:
      return static_cast<std::int32_t>(std::get<ArrayRef>(eval(c.kids[0]))->items.size());
    case Op::NewArray: {
      auto n = std::get<std::int32_t>(eval(c.kids[0]));
      if (n < 0)
        throw Fault{RuntimeErrorKind::NegativeArraySize};
      tick(static_cast<std::uint64_t>(n));
      auto a = std::make_shared<ArrayValue>();
      a->element = c.type.element();
      a->items.assign(static_cast<std::size_t>(n), default_value(a->element));
      return a;
    }
    case Op::ArrayInit: {
      auto a = std::make_shared<ArrayValue>();
      a->element = c.type.element();
      for (const auto &k : c.kids)
        a->items.push_back(eval(k));
      return a;
    }
    case Op::StoreVar: {
      auto &slot = frame_[static_cast<std::size_t>(c.slot)];
      if (!c.flag)
        return slot = eval(c.kids[0]);
      Value current = slot;
      Value v = eval(c.kids.back());
      return slot = combine(c, current, v);
    }
    case Op::StoreIndex: {
      ArrayRef a = std::get<ArrayRef>(eval(c.kids[0]));
      auto i = std::get<std::int32_t>(eval(c.kids[1]));
      if (!c.flag) {
        Value v = eval(c.kids[2]);
        element(a, i);
        return a->items[static_cast<std::size_t>(i)] = std::move(v);
      }
      Value current = element(a, i);
      Value v = eval(c.kids[2]);
      return a->items[static_cast<std::size_t>(i)] = combine(c, current, v);
    }
    case Op::IncVar: {
      auto &slot = frame_[static_cast<std::size_t>(c.slot)];
      Value old = slot;
      slot = step_value(old, c.num, c.delta);
      return c.flag ? slot : old;
    }
    case Op::IncIndex: {
      ArrayRef a = std::get<ArrayRef>(eval(c.kids[0]));
      auto i = std::get<std::int32_t>(eval(c.kids[1]));
      Value old = element(a, i);
      Value now = step_value(old, c.num, c.delta);
      a->items[static_cast<std::size_t>(i)] = now;
      return c.flag ? now : old;
    }
    default:
      throw Error(ErrorKind::InvalidArgument, "statement in expression position");
    }
  }

  Flow exec(const CNode &c) {
    tick();
    switch (c.op) {
    case Op::Seq:
      if (c.flag) {
        for (const auto &d : c.kids)
          frame_[static_cast<std::size_t>(d.slot)] =
              d.kids.empty() ? default_value(d.type) : eval(d.kids[0]);
        return Flow::Normal;
      }
      for (const auto &s : c.kids) {
        Flow f = exec(s);
        if (f != Flow::Normal)
          return f;
      }
      return Flow::Normal;
    case Op::Eval:
      eval(c.kids[0]);
      return Flow::Normal;
    case Op::If:
      if (std::get<bool>(eval(c.kids[0])))
        return exec(c.kids[1]);
      return c.kids.size() > 2 ? exec(c.kids[2]) : Flow::Normal;
    case Op::Switch: {
      Value v = eval(c.kids[0]);
      std::size_t chosen = 0;
      for (std::size_t i = 1; i < c.kids.size() && !chosen; ++i)
        for (const auto &l : c.kids[i].labels)
          if (compare(Bin::Eq, c.num, v, l))
            chosen = i;
      if (!chosen)
        for (std::size_t i = 1; i < c.kids.size() && !chosen; ++i)
          if (c.kids[i].flag)
            chosen = i;
      if (!chosen)
        return Flow::Normal;
      for (const auto &s : c.kids[chosen].kids) {
        Flow f = exec(s);
        if (f == Flow::Break)
          return Flow::Normal;
        if (f == Flow::Return)
          return f;
      }
      if (chosen + 1 < c.kids.size())
        throw Fault{RuntimeErrorKind::SwitchFallthroughViolation};
      return Flow::Normal;
    }
    case Op::For: {
      exec(c.kids[0]);
      for (;;) {
        tick();
        if (!std::get<bool>(eval(c.kids[1])))
          return Flow::Normal;
        Flow f = exec(c.kids[3]);
        if (f != Flow::Normal)
          return f;
        for (const auto &u : c.kids[2].kids)
          eval(u);
      }
    }
    case Op::Foreach: {
      ArrayRef a = std::get<ArrayRef>(eval(c.kids[0]));
      for (std::size_t i = 0; i < a->items.size(); ++i) {
        tick();
        frame_[static_cast<std::size_t>(c.slot)] = a->items[i];
        Flow f = exec(c.kids[1]);
        if (f != Flow::Normal)
          return f;
      }
      return Flow::Normal;
    }
    case Op::While:
      for (;;) {
        tick();
        if (!std::get<bool>(eval(c.kids[0])))
          return Flow::Normal;
        Flow f = exec(c.kids[1]);
        if (f != Flow::Normal)
          return f;
      }
    case Op::Return:
      result_ = eval(c.kids[0]);
      return Flow::Return;
    case Op::Break:
      return Flow::Break;
    case Op::Nop:
      return Flow::Normal;
    default:
      throw Error(ErrorKind::InvalidArgument, "expression in statement position");
    }
  }

private:
  std::uint64_t budget_;
  std::uint64_t steps_ = 0;

  static const Value &element(const ArrayRef &a, std::int32_t i) {
    if (i < 0 || static_cast<std::size_t>(i) >= a->items.size())
      throw Fault{RuntimeErrorKind::IndexOutOfBounds};
    return a->items[static_cast<std::size_t>(i)];
  }

  static Value step_value(const Value &v, BaseType t, int delta) {
    switch (t) {
    case BaseType::Int:
      return wrap_arith<std::int32_t>(Bin::Add, std::get<std::int32_t>(v), delta);
    case BaseType::Long:
      return wrap_arith<std::int64_t>(Bin::Add, std::get<std::int64_t>(v), delta);
    default: return std::get<double>(v) + delta;
    }
  }

  static Value combine(const CNode &c, const Value &current, const Value &v) {
    if (c.type.is(BaseType::String))
      return concat_piece(current) + concat_piece(v);
    Value r = arith(c.bin, c.calc, convert(current, c.calc), v);
    return convert(r, c.num);
  }
};

} // namespace

struct CompiledMethod::Impl {
  CNode body;
  std::size_t slots = 0;
  std::vector<Type> signature;
};

CompiledMethod::CompiledMethod(const MethodAst &method) : impl_(std::make_unique<Impl>()) {
  Compiler compiler(method);
  impl_->body = compiler.body(method);
  impl_->slots = compiler.slots();
  impl_->signature = signature_of(method);
}

CompiledMethod::~CompiledMethod() = default;
CompiledMethod::CompiledMethod(CompiledMethod &&) noexcept = default;
CompiledMethod &CompiledMethod::operator=(CompiledMethod &&) noexcept = default;

const std::vector<Type> &CompiledMethod::signature() const { return impl_->signature; }

Outcome CompiledMethod::run(const InputVector &input, std::uint64_t step_budget) const {
  if (input.size() != impl_->signature.size())
    throw Error(ErrorKind::SignatureMismatch, "input arity does not match the method");
  Machine m(impl_->slots, step_budget);
  for (std::size_t i = 0; i < input.size(); ++i)
    m.frame_[i] = deep_copy(input[i]);
  try {
    if (m.exec(impl_->body) == Flow::Return)
      return Outcome::of_value(std::move(m.result_));
    throw Error(ErrorKind::InvalidArgument, "method completed without returning");
  } catch (const Fault &f) {
    return Outcome::of_error(f.kind);
  } catch (const OutOfBudget &) {
    return Outcome::exhausted();
  }
}

Outcome evaluate(const MethodAst &method, const InputVector &input,
                 std::uint64_t step_budget) {
  if (step_budget == 0)
    throw Error(ErrorKind::InvalidArgument, "step budget must be positive");
  return CompiledMethod(method).run(input, step_budget);
}

std::vector<Type> signature_of(const MethodAst &method) {
  std::vector<Type> sig;
  for (const auto &p : method.params)
    sig.push_back(p.type);
  return sig;
}

} // namespace refdecomp
