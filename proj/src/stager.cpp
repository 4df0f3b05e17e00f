#include "stagec/stager.hpp"

#include "stagec/validate.hpp"

namespace stagec::stager {

using kernel::Phase;
using kernel::Stage;
using kernel::Term;
using kernel::TermPtr;
using kernel::Ty;
using kernel::TyPtr;
using ope::Ope;

namespace {

[[noreturn]] void stuck(const char* what) {
  throw InternalError(std::string("StuckEvaluation: ") + what);
}

}  // namespace

ValuePtr Value::dyn(kernel::TermPtr term) {
  auto v = std::shared_ptr<Value>(new Value(Kind::Dyn));
  v->term_ = std::move(term);
  return v;
}

ValuePtr Value::nat(std::uint64_t n) {
  auto v = std::shared_ptr<Value>(new Value(Kind::Nat));
  v->nat_ = n;
  return v;
}

ValuePtr Value::boolean(bool b) {
  auto v = std::shared_ptr<Value>(new Value(Kind::Bool));
  v->bool_ = b;
  return v;
}

ValuePtr Value::pair(ValuePtr first, ValuePtr second) {
  auto v = std::shared_ptr<Value>(new Value(Kind::Pair));
  v->first_ = std::move(first);
  v->second_ = std::move(second);
  return v;
}

ValuePtr Value::fn(Kripke fn) {
  auto v = std::shared_ptr<Value>(new Value(Kind::Fn));
  v->fn_ = std::make_shared<const Kripke>(std::move(fn));
  return v;
}

const kernel::TermPtr& Value::term() const {
  if (kind_ != Kind::Dyn) stuck("expected a staged term value");
  return term_;
}

std::uint64_t Value::natValue() const {
  if (kind_ != Kind::Nat) stuck("expected a static number");
  return nat_;
}

bool Value::boolValue() const {
  if (kind_ != Kind::Bool) stuck("expected a static boolean");
  return bool_;
}

const ValuePtr& Value::first() const {
  if (kind_ != Kind::Pair) stuck("expected a static pair");
  return first_;
}

const ValuePtr& Value::second() const {
  if (kind_ != Kind::Pair) stuck("expected a static pair");
  return second_;
}

const Kripke& Value::fnValue() const {
  if (kind_ != Kind::Fn) stuck("expected a static function");
  return *fn_;
}

const ValuePtr& Env::lookup(std::size_t index) const {
  if (index >= values_.size()) stuck("environment lookup out of range");
  return values_[index];
}

ValuePtr semApp(const Kripke& f, const ValuePtr& v) { return f.extract()(v); }

Kripke wkKripke(const Ope& sigma, const Kripke& f) { return f.weakened(sigma); }

ValuePtr wkValue(const Ope& sigma, const ValuePtr& v) {
  switch (v->kind()) {
    case Value::Kind::Dyn:
      return Value::dyn(ope::wkTerm(sigma, v->term()));
    case Value::Kind::Nat:
    case Value::Kind::Bool:
      return v;
    case Value::Kind::Pair:
      return Value::pair(wkValue(sigma, v->first()), wkValue(sigma, v->second()));
    case Value::Kind::Fn:
      return Value::fn(wkKripke(sigma, v->fnValue()));
  }
  stuck("unknown value kind");
}

Boxed<std::function<Env(const ValuePtr&)>> extend(const Env& env) {
  return Boxed<std::function<Env(const ValuePtr&)>>(
      env.targetSize(), [env](const Ope& sigma) {
        return [env, sigma](const ValuePtr& fresh) {
          std::vector<ValuePtr> values;
          values.reserve(env.size() + 1);
          values.push_back(fresh);
          for (const ValuePtr& v : env.values()) values.push_back(wkValue(sigma, v));
          return Env(std::move(values), sigma.target());
        };
      });
}

Kripke body(const TermPtr& t, const Env& env) {
  return Kripke(env.targetSize(), [t, env](const Ope& sigma) {
    return [t, env, sigma](const ValuePtr& v) {
      return eval(t, extend(env).run(sigma)(v));
    };
  });
}

ValuePtr eval(const TermPtr& t, const Env& env) {
  if (!t) stuck("evaluating a missing term");
  const Stage st = t->stage();

  switch (t->kind()) {
    case Term::Kind::Var:
      return env.lookup(t->varIndex());

    case Term::Kind::App: {
      ValuePtr fv = eval(t->fun(), env);
      ValuePtr xv = eval(t->arg(), env);
      if (st == Stage::Sta) return semApp(fv->fnValue(), xv);
      return Value::dyn(Term::app(fv->term(), xv->term()));
    }

    case Term::Kind::Lam: {
      Kripke k = body(t->body(), env);
      if (st == Stage::Sta) return Value::fn(std::move(k));
      // Dynamic binder: instantiate the body one context slot deeper with a
      // fresh variable, then rebuild the lambda.
      TyPtr dom = kernel::asStaged(t->type()->left());
      Ope under = Ope::id(env.targetSize()).dropped();
      ValuePtr fresh = Value::dyn(Term::var(0, dom));
      ValuePtr bodyValue = k.run(under)(fresh);
      return Value::dyn(Term::lam(dom, bodyValue->term()));
    }

    case Term::Kind::Quote:
    case Term::Kind::Splice:
      // Static values at a lifted type and staged terms are interchangeable.
      return eval(t->inner(), env);

    case Term::Kind::Zero:
      if (st == Stage::Sta) return Value::nat(0);
      return Value::dyn(Term::zero(Phase::Stg, Stage::Dyn));

    case Term::Kind::Succ: {
      ValuePtr n = eval(t->inner(), env);
      if (st == Stage::Sta) return Value::nat(1 + n->natValue());
      return Value::dyn(Term::succ(n->term()));
    }

    case Term::Kind::Iter: {
      ValuePtr n = eval(t->count(), env);
      ValuePtr z = eval(t->seed(), env);
      ValuePtr s = eval(t->step(), env);
      if (st == Stage::Sta) {
        const Kripke& stepFn = s->fnValue();
        return iterate(n->natValue(), std::move(z),
                       [&stepFn](const ValuePtr& acc) { return semApp(stepFn, acc); });
      }
      return Value::dyn(Term::iter(n->term(), z->term(), s->term()));
    }

    case Term::Kind::TrueLit:
      return Value::boolean(true);
    case Term::Kind::FalseLit:
      return Value::boolean(false);

    case Term::Kind::If:
      return eval(t->cond(), env)->boolValue() ? eval(t->thenBranch(), env)
                                               : eval(t->elseBranch(), env);

    case Term::Kind::Pair:
      return Value::pair(eval(t->left(), env), eval(t->right(), env));
    case Term::Kind::Fst:
      return eval(t->inner(), env)->first();
    case Term::Kind::Snd:
      return eval(t->inner(), env)->second();

    case Term::Kind::Nand:
      return Value::dyn(Term::nandGate(Phase::Stg));
    case Term::Kind::Par:
      return Value::dyn(Term::par(eval(t->left(), env)->term(), eval(t->right(), env)->term()));
    case Term::Kind::Seq:
      return Value::dyn(Term::seq(eval(t->left(), env)->term(), eval(t->right(), env)->term()));
    case Term::Kind::Mix:
      return Value::dyn(Term::mix(t->wires(), t->type()->inputs(), Phase::Stg));
  }
  stuck("unhandled constructor");
}

TermPtr stage(const TermPtr& t) {
  if (!t) throw InternalError("staging a missing term");
  if (auto diag = kernel::validate(t, Phase::Src, Stage::Dyn, t->type(), kernel::Ctx::empty()))
    throw Error(*diag);
  return eval(t, Env::empty())->term();
}

}  // namespace stagec::stager
