/*
 * Copyright 2026 The stpa-rec Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "stpa/syntax.hpp"

#include <cctype>
#include <sstream>

#include "stpa/errors.hpp"

namespace stpa {
namespace {

bool IsIdentChar(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '#' ||
         c == '\'';
}

class Parser {
 public:
  explicit Parser(std::string_view s) : s_(s) {}

  Term Whole() {
    Term t = ParseAlt();
    ExpectEnd();
    return t;
  }

  void ExpectEnd() {
    Skip();
    if (pos_ != s_.size()) Fail("unexpected trailing input");
  }

  CommState Sigma() {
    Expect('{');
    std::vector<SendRecord> recs;
    if (!TryConsume('}')) {
      do {
        Expect('(');
        SendRecord r;
        r.channel = Ident("channel");
        Expect(',');
        r.datum = Ident("datum");
        Expect(',');
        r.time = Number();
        Expect(',');
        r.point = PointLit();
        Expect(')');
        recs.push_back(std::move(r));
      } while (TryConsume(','));
      Expect('}');
    }
    return CommState(std::move(recs));
  }

  ActionPattern Pattern() {
    std::vector<ActionPattern::Atom> atoms;
    Skip();
    if (Peek() == ']' || pos_ == s_.size()) return ActionPattern();
    do {
      ActionPattern::Atom at;
      std::string kw = Ident("pattern kind");
      if (kw == "recv") {
        at.kind = ActionPattern::Kind::kRecv;
      } else if (kw == "send") {
        at.kind = ActionPattern::Kind::kSend;
      } else if (kw == "any") {
        at.kind = ActionPattern::Kind::kAny;
      } else {
        Fail("pattern kind must be recv, send or any");
      }
      Expect('(');
      at.channels = IdentList(')');
      if (TryConsume(':')) {
        if (TryConsume('{')) {
          at.data = IdentList('}');
        } else {
          at.data = std::vector<std::string>{Ident("datum")};
        }
      }
      atoms.push_back(std::move(at));
    } while (TryConsume('|'));
    return ActionPattern(std::move(atoms));
  }

  ChannelSet Channels() {
    Skip();
    bool braced = TryConsume('{');
    std::vector<std::string> names;
    Skip();
    if (braced) {
      names = IdentList('}');
    } else if (pos_ < s_.size()) {
      do {
        names.push_back(Ident("channel"));
      } while (TryConsume(','));
    }
    return ChannelSet(std::move(names));
  }

  Point PointLit() {
    Expect('(');
    Point p;
    p.x = Number();
    Expect(',');
    p.y = Number();
    Expect(',');
    p.z = Number();
    Expect(')');
    return p;
  }

  ExtScalar ExtNumber() {
    Skip();
    if (LookingAtWord("inf")) {
      pos_ += 3;
      return ExtScalar::Infinity();
    }
    return Number();
  }

 private:
  [[noreturn]] void Fail(const std::string& msg) { throw SyntaxError(msg, pos_); }

  void Skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_])))
      ++pos_;
  }

  char Peek() {
    Skip();
    return pos_ < s_.size() ? s_[pos_] : '\0';
  }

  bool TryConsume(char c) {
    if (Peek() == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  bool TryConsume(std::string_view tok) {
    Skip();
    if (s_.substr(pos_, tok.size()) == tok) {
      pos_ += tok.size();
      return true;
    }
    return false;
  }

  void Expect(char c) {
    if (!TryConsume(c)) Fail(std::string("expected '") + c + "'");
  }

  bool LookingAtWord(std::string_view w) {
    return s_.substr(pos_, w.size()) == w &&
           (pos_ + w.size() == s_.size() || !IsIdentChar(s_[pos_ + w.size()]));
  }

  // Keyword `w` immediately (modulo spaces) followed by `next`.
  bool LookingAtKeyword(std::string_view w, char next) {
    Skip();
    if (!LookingAtWord(w)) return false;
    std::size_t p = pos_ + w.size();
    while (p < s_.size() && std::isspace(static_cast<unsigned char>(s_[p]))) ++p;
    return p < s_.size() && s_[p] == next;
  }

  std::string Ident(const char* what) {
    Skip();
    std::size_t start = pos_;
    while (pos_ < s_.size() && IsIdentChar(s_[pos_])) ++pos_;
    if (start == pos_) Fail(std::string("expected ") + what);
    return std::string(s_.substr(start, pos_ - start));
  }

  std::vector<std::string> IdentList(char close) {
    std::vector<std::string> out;
    if (TryConsume(close)) return out;
    do {
      out.push_back(Ident("identifier"));
    } while (TryConsume(','));
    Expect(close);
    return out;
  }

  Scalar Number() {
    Skip();
    std::size_t start = pos_;
    if (pos_ < s_.size() && (s_[pos_] == '-' || s_[pos_] == '+')) ++pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (pos_ < s_.size() && s_[pos_] == '/') {
      ++pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }
    try {
      return Scalar::Parse(s_.substr(start, pos_ - start));
    } catch (const SyntaxError& e) {
      throw SyntaxError("malformed number", start);
    }
  }

  bool TimingKeyword() {  // true for abs, false for rel
    std::string kw = Ident("'abs' or 'rel'");
    if (kw == "abs") return true;
    if (kw == "rel") return false;
    Fail("expected 'abs' or 'rel'");
  }

  Term ParseAlt() {
    std::vector<Term> parts{ParsePar()};
    while (TryConsume('+')) parts.push_back(ParsePar());
    return AltOf(parts);
  }

  Term ParsePar() {
    std::vector<Term> parts{ParseMerge()};
    while (TryConsume("||")) parts.push_back(ParseMerge());
    Term acc = parts.back();
    for (std::size_t i = parts.size() - 1; i-- > 0;) acc = Par(parts[i], acc);
    return acc;
  }

  Term ParseMerge() {
    Term acc = ParseSeq();
    for (;;) {
      if (TryConsume("|_")) {
        acc = LeftMerge(acc, ParseSeq());
      } else if (TryConsume(">>")) {
        acc = Timeout(acc, ParseSeq());
      } else {
        return acc;
      }
    }
  }

  Term ParseSeq() {
    std::vector<Term> parts{ParseAtom()};
    for (;;) {
      Skip();
      if (pos_ < s_.size() && s_[pos_] == '.' &&
          !(pos_ + 1 < s_.size() && s_[pos_ + 1] == '.')) {
        ++pos_;
        parts.push_back(ParseAtom());
      } else {
        break;
      }
    }
    Term acc = parts.back();
    for (std::size_t i = parts.size() - 1; i-- > 0;) acc = Seq(parts[i], acc);
    return acc;
  }

  Term ParseAction(const std::string& kw) {
    std::size_t at = pos_;
    Expect('(');
    std::string c = Ident("channel");
    Expect(',');
    std::string d = Ident("datum");
    Expect(';');
    try {
      if (kw == "es" || kw == "er") {
        Scalar t = Number();
        Expect(';');
        Point p = PointLit();
        Expect(')');
        return Act(kw == "es" ? Action::AESend(c, d, t, p)
                              : Action::AERecv(c, d, t, p));
      }
      bool abs = TimingKeyword();
      if (kw == "ps") {
        Scalar t = Number();
        Expect(';');
        Point p = PointLit();
        Expect(')');
        return Act(abs ? Action::APSend(c, d, t, p) : Action::RPSend(c, d, t, p));
      }
      Scalar lo = Number();
      if (!TryConsume("..")) Fail("expected '..' in receive window");
      ExtScalar hi = ExtNumber();
      Expect(';');
      Point p = PointLit();
      Expect(')');
      return Act(abs ? Action::APRecv(c, d, lo, hi, p)
                     : Action::RPRecv(c, d, lo, hi, p));
    } catch (const InvalidArgument& e) {
      throw SyntaxError(e.what(), at);
    }
  }

  Term ParseAtom() {
    Skip();
    if (pos_ >= s_.size()) Fail("unexpected end of input");
    if (TryConsume('(')) {
      Term t = ParseAlt();
      Expect(')');
      return t;
    }
    if (LookingAtWord("dd")) {
      pos_ += 2;
      if (!TryConsume('(')) return Deadlock();
      bool abs = TimingKeyword();
      std::size_t at = pos_;
      ExtScalar t = ExtNumber();
      Expect(')');
      try {
        return abs ? ADead(t) : RDead(t);
      } catch (const InvalidArgument& e) {
        throw SyntaxError(e.what(), at);
      }
    }
    for (const char* kw : {"ps", "pr", "es", "er"}) {
      if (LookingAtKeyword(kw, '(')) {
        pos_ += 2;
        return ParseAction(kw);
      }
    }
    if (LookingAtKeyword("L", '{')) {
      pos_ += 1;
      Expect('{');
      ChannelSet chans(IdentList('}'));
      Expect('@');
      Scalar t = Number();
      Expect(':');
      CommState sigma = Sigma();
      Expect('(');
      Term body = ParseAlt();
      Expect(')');
      return StateOp(chans, t, sigma, body);
    }
    if (LookingAtKeyword("mp", '[') || LookingAtKeyword("ap", '[')) {
      bool aux = s_[pos_] == 'a';
      pos_ += 2;
      Expect('[');
      ActionPattern h = Pattern();
      Expect(']');
      Expect('(');
      Term a = ParseAlt();
      if (aux) {
        Expect(',');
        Term b = ParseAlt();
        Expect(')');
        return AuxMaxProg(h, a, b);
      }
      Expect(')');
      return MaxProg(h, a);
    }
    if (LookingAtWord("rec")) {
      std::size_t save = pos_;
      pos_ += 3;
      Skip();
      std::size_t id_start = pos_;
      while (pos_ < s_.size() && IsIdentChar(s_[pos_])) ++pos_;
      std::string root(s_.substr(id_start, pos_ - id_start));
      if (!root.empty() && Peek() == '{') {
        Expect('{');
        RecSpec::Equations eqs;
        do {
          std::string x = Ident("variable");
          Expect('=');
          Term body = ParseAlt();
          Expect(';');
          eqs.emplace_back(std::move(x), std::move(body));
        } while (Peek() != '}');
        Expect('}');
        try {
          return RecConst(root, RecSpec::Make(std::move(eqs)));
        } catch (const InvalidArgument& e) {
          throw SyntaxError(e.what(), save);
        }
      }
      pos_ = save;
    }
    if (IsIdentChar(s_[pos_]) && !std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
      return Var(Ident("variable"));
    }
    Fail("expected a process term");
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

// Precedence levels: alt 0, par 1, merge/timeout 2, seq 3, atom 4.
int Level(const Term& t) {
  switch (t.kind()) {
    case TermKind::kAlt:
      return 0;
    case TermKind::kPar:
      return 1;
    case TermKind::kLeftMerge:
    case TermKind::kTimeout:
      return 2;
    case TermKind::kSeq:
      return 3;
    default:
      return 4;
  }
}

void PrintTo(const Term& t, std::ostringstream& os);

void PrintChild(const Term& t, bool parens, std::ostringstream& os) {
  if (parens) os << '(';
  PrintTo(t, os);
  if (parens) os << ')';
}

void PrintPoint(const Point& p, std::ostringstream& os) { os << p.str(); }

void PrintSpecTo(const RecSpec& e, const std::string& root,
                 std::ostringstream& os) {
  os << "rec " << root << " { ";
  for (const auto& [x, body] : e.equations()) {
    os << x << " = ";
    PrintTo(body, os);
    os << "; ";
  }
  os << '}';
}

void PrintTo(const Term& t, std::ostringstream& os) {
  switch (t.kind()) {
    case TermKind::kDeadlock:
      os << "dd";
      return;
    case TermKind::kADead:
      os << "dd(abs " << t.dead_time().str() << ')';
      return;
    case TermKind::kRDead:
      os << "dd(rel " << t.dead_time().str() << ')';
      return;
    case TermKind::kAct:
      os << Print(t.action());
      return;
    case TermKind::kAlt:
    case TermKind::kPar:
    case TermKind::kSeq: {
      // Right-nested chains print without parentheses.
      int lvl = Level(t);
      const char* op = t.is(TermKind::kAlt) ? " + " : (t.is(TermKind::kPar) ? " || " : " . ");
      PrintChild(t.lhs(), Level(t.lhs()) <= lvl, os);
      os << op;
      PrintChild(t.rhs(), Level(t.rhs()) < lvl, os);
      return;
    }
    case TermKind::kLeftMerge:
    case TermKind::kTimeout:
      PrintChild(t.lhs(), Level(t.lhs()) < 2, os);
      os << (t.is(TermKind::kLeftMerge) ? " |_ " : " >> ");
      PrintChild(t.rhs(), Level(t.rhs()) <= 2, os);
      return;
    case TermKind::kStateOp:
      os << "L" << Print(t.channels()) << '@' << t.state_time().str() << ':'
         << Print(t.sigma()) << '(';
      PrintTo(t.lhs(), os);
      os << ')';
      return;
    case TermKind::kMaxProg:
      os << "mp[" << Print(t.pattern()) << "](";
      PrintTo(t.lhs(), os);
      os << ')';
      return;
    case TermKind::kAuxMaxProg:
      os << "ap[" << Print(t.pattern()) << "](";
      PrintTo(t.lhs(), os);
      os << ", ";
      PrintTo(t.rhs(), os);
      os << ')';
      return;
    case TermKind::kRecConst:
      PrintSpecTo(*t.spec(), t.name(), os);
      return;
    case TermKind::kVar:
      os << t.name();
      return;
  }
}

}  // namespace

Term ParseTerm(std::string_view text) { return Parser(text).Whole(); }

CommState ParseSigma(std::string_view text) {
  Parser p(text);
  CommState s = p.Sigma();
  p.ExpectEnd();
  return s;
}

ActionPattern ParsePattern(std::string_view text) {
  Parser p(text);
  ActionPattern h = p.Pattern();
  p.ExpectEnd();
  return h;
}

ChannelSet ParseChannels(std::string_view text) {
  Parser p(text);
  ChannelSet c = p.Channels();
  p.ExpectEnd();
  return c;
}

Point ParsePoint(std::string_view text) {
  Parser p(text);
  Point pt = p.PointLit();
  p.ExpectEnd();
  return pt;
}

ExtScalar ParseExtScalar(std::string_view text) {
  Parser p(text);
  ExtScalar e = p.ExtNumber();
  p.ExpectEnd();
  return e;
}

std::string Print(const Term& t) {
  std::ostringstream os;
  PrintTo(t, os);
  return os.str();
}

std::string Print(const Action& a) {
  std::ostringstream os;
  auto head = [&](const char* kw) {
    os << kw << '(' << a.channel() << ',' << a.datum() << "; ";
  };
  switch (a.kind()) {
    case ActionKind::kAPSend:
      head("ps");
      os << "abs " << a.time().str();
      break;
    case ActionKind::kRPSend:
      head("ps");
      os << "rel " << a.time().str();
      break;
    case ActionKind::kAPRecv:
      head("pr");
      os << "abs " << a.time().str() << ".." << a.upper().str();
      break;
    case ActionKind::kRPRecv:
      head("pr");
      os << "rel " << a.time().str() << ".." << a.upper().str();
      break;
    case ActionKind::kAESend:
      head("es");
      os << a.time().str();
      break;
    case ActionKind::kAERecv:
      head("er");
      os << a.time().str();
      break;
  }
  os << "; ";
  PrintPoint(a.point(), os);
  os << ')';
  return os.str();
}

std::string Print(const CommState& s) {
  std::ostringstream os;
  os << '{';
  bool first = true;
  for (const auto& r : s.records()) {
    if (!first) os << ", ";
    first = false;
    os << '(' << r.channel << ',' << r.datum << ',' << r.time.str() << ','
       << r.point.str() << ')';
  }
  os << '}';
  return os.str();
}

std::string Print(const ActionPattern& h) {
  std::ostringstream os;
  bool first = true;
  for (const auto& at : h.atoms()) {
    if (!first) os << " | ";
    first = false;
    os << (at.kind == ActionPattern::Kind::kRecv
               ? "recv"
               : (at.kind == ActionPattern::Kind::kSend ? "send" : "any"))
       << '(';
    for (std::size_t i = 0; i < at.channels.size(); ++i) {
      os << (i ? "," : "") << at.channels[i];
    }
    os << ')';
    if (at.data) {
      os << ":{";
      for (std::size_t i = 0; i < at.data->size(); ++i) {
        os << (i ? "," : "") << (*at.data)[i];
      }
      os << '}';
    }
  }
  return os.str();
}

std::string Print(const ChannelSet& c) {
  std::string out = "{";
  for (std::size_t i = 0; i < c.names().size(); ++i) {
    if (i) out += ',';
    out += c.names()[i];
  }
  return out + "}";
}

std::string PrintSpec(const RecSpec& e, const std::string& root) {
  std::ostringstream os;
  PrintSpecTo(e, root, os);
  return os.str();
}

}  // namespace stpa
