// minicc: a MiniC-style contract compiler targeting the EVM
// Copyright 2026 The minicc Authors.
// SPDX-License-Identifier: Apache-2.0
#include "minicc/ir.hpp"

#include "minicc/errors.hpp"

#include <algorithm>
#include <sstream>

namespace minicc
{
const char* ir_unop_name(IrUnop op)
{
    switch (op)
    {
    case IrUnop::lnot:
        return "lnot";
    case IrUnop::bnot:
        return "bnot";
    case IrUnop::ohash1:
        return "ohash1";
    }
    return "?";
}

const char* ir_binop_name(IrBinop op)
{
    switch (op)
    {
    case IrBinop::add:
        return "add";
    case IrBinop::sub:
        return "sub";
    case IrBinop::mul:
        return "mul";
    case IrBinop::div_:
        return "div";
    case IrBinop::mod:
        return "mod";
    case IrBinop::bit_and:
        return "and";
    case IrBinop::bit_or:
        return "or";
    case IrBinop::bit_xor:
        return "xor";
    case IrBinop::eq:
        return "eq";
    case IrBinop::lt:
        return "lt";
    case IrBinop::gt:
        return "gt";
    case IrBinop::ohash2:
        return "ohash2";
    }
    return "?";
}

bool ir_binop_commutative(IrBinop op)
{
    switch (op)
    {
    case IrBinop::add:
    case IrBinop::mul:
    case IrBinop::bit_and:
    case IrBinop::bit_or:
    case IrBinop::bit_xor:
    case IrBinop::eq:
        return true;
    default:
        return false;
    }
}

static CExprPtr mkc(CExpr e)
{
    return std::make_shared<CExpr>(std::move(e));
}

CExprPtr CExpr::make_const(Word v)
{
    CExpr e;
    e.kind = Kind::cnst;
    e.literal = std::move(v);
    return mkc(std::move(e));
}

CExprPtr CExpr::make_temp(int id)
{
    CExpr e;
    e.kind = Kind::temp;
    e.temp_id = id;
    return mkc(std::move(e));
}

CExprPtr CExpr::make_sload(CExprPtr ptr)
{
    CExpr e;
    e.kind = Kind::sload;
    e.sub = std::move(ptr);
    return mkc(std::move(e));
}

CExprPtr CExpr::make_unop(IrUnop op, CExprPtr s)
{
    CExpr e;
    e.kind = Kind::unop;
    e.un = op;
    e.sub = std::move(s);
    return mkc(std::move(e));
}

CExprPtr CExpr::make_binop(IrBinop op, CExprPtr a, CExprPtr b)
{
    CExpr e;
    e.kind = Kind::binop;
    e.bin = op;
    e.lhs = std::move(a);
    e.rhs = std::move(b);
    return mkc(std::move(e));
}

CExprPtr CExpr::make_hash1(CExprPtr s)
{
    CExpr e;
    e.kind = Kind::hash1;
    e.sub = std::move(s);
    return mkc(std::move(e));
}

CExprPtr CExpr::make_hash2(CExprPtr base, CExprPtr key)
{
    CExpr e;
    e.kind = Kind::hash2;
    e.lhs = std::move(base);
    e.rhs = std::move(key);
    return mkc(std::move(e));
}

CExprPtr CExpr::make_call0(Builtin0 b)
{
    CExpr e;
    e.kind = Kind::call0;
    e.b0 = b;
    return mkc(std::move(e));
}

CExprPtr CExpr::make_call1(Builtin1 b, CExprPtr s)
{
    CExpr e;
    e.kind = Kind::call1;
    e.b1 = b;
    e.sub = std::move(s);
    return mkc(std::move(e));
}

int CExpr::node_count() const
{
    int n = 1;
    if (sub)
        n += sub->node_count();
    if (lhs)
        n += lhs->node_count();
    if (rhs)
        n += rhs->node_count();
    return n;
}

void CExpr::collect_temps(std::vector<int>& out) const
{
    if (kind == Kind::temp)
        out.push_back(temp_id);
    if (sub)
        sub->collect_temps(out);
    if (lhs)
        lhs->collect_temps(out);
    if (rhs)
        rhs->collect_temps(out);
}

std::string CExpr::str() const
{
    std::ostringstream os;
    switch (kind)
    {
    case Kind::cnst:
        os << word_to_dec(literal);
        break;
    case Kind::temp:
        os << "t" << temp_id;
        break;
    case Kind::sload:
        os << "sload(" << sub->str() << ")";
        break;
    case Kind::unop:
        os << ir_unop_name(un) << "(" << sub->str() << ")";
        break;
    case Kind::binop:
        os << ir_binop_name(bin) << "(" << lhs->str() << ", " << rhs->str() << ")";
        break;
    case Kind::hash1:
        os << "hash1(" << sub->str() << ")";
        break;
    case Kind::hash2:
        os << "hash2(" << lhs->str() << ", " << rhs->str() << ")";
        break;
    case Kind::call0:
        os << builtin0_name(b0);
        break;
    case Kind::call1:
        os << builtin1_name(b1) << "(" << sub->str() << ")";
        break;
    }
    return os.str();
}

static ClikeStmtPtr mkcs(ClikeStmt s)
{
    return std::make_shared<ClikeStmt>(std::move(s));
}

ClikeStmtPtr ClikeStmt::make_skip()
{
    return mkcs({});
}

ClikeStmtPtr ClikeStmt::make_sstore(CExprPtr ptr, CExprPtr value)
{
    ClikeStmt s;
    s.kind = Kind::sstore;
    s.ptr = std::move(ptr);
    s.value = std::move(value);
    return mkcs(std::move(s));
}

ClikeStmtPtr ClikeStmt::make_set(int temp, CExprPtr value)
{
    ClikeStmt s;
    s.kind = Kind::set;
    s.temp_id = temp;
    s.value = std::move(value);
    return mkcs(std::move(s));
}

ClikeStmtPtr ClikeStmt::make_call(int result, std::string callee, std::vector<CExprPtr> args)
{
    ClikeStmt s;
    s.kind = Kind::call;
    s.temp_id = result;
    s.callee = std::move(callee);
    s.args = std::move(args);
    return mkcs(std::move(s));
}

ClikeStmtPtr ClikeStmt::make_sequence(ClikeStmtPtr a, ClikeStmtPtr b)
{
    ClikeStmt s;
    s.kind = Kind::sequence;
    s.s1 = std::move(a);
    s.s2 = std::move(b);
    return mkcs(std::move(s));
}

ClikeStmtPtr ClikeStmt::make_ifte(CExprPtr cond, ClikeStmtPtr t, ClikeStmtPtr e)
{
    ClikeStmt s;
    s.kind = Kind::ifte;
    s.ptr = std::move(cond);
    s.s1 = std::move(t);
    s.s2 = std::move(e);
    return mkcs(std::move(s));
}

ClikeStmtPtr ClikeStmt::make_loop(ClikeStmtPtr body)
{
    ClikeStmt s;
    s.kind = Kind::loop;
    s.s1 = std::move(body);
    return mkcs(std::move(s));
}

ClikeStmtPtr ClikeStmt::make_break()
{
    ClikeStmt s;
    s.kind = Kind::break_;
    return mkcs(std::move(s));
}

ClikeStmtPtr ClikeStmt::make_done(CExprPtr value_or_null)
{
    ClikeStmt s;
    s.kind = Kind::done;
    s.value = std::move(value_or_null);
    return mkcs(std::move(s));
}

ClikeStmtPtr ClikeStmt::make_transfer(CExprPtr to, CExprPtr amount)
{
    ClikeStmt s;
    s.kind = Kind::transfer;
    s.ptr = std::move(to);
    s.value = std::move(amount);
    return mkcs(std::move(s));
}

ClikeStmtPtr ClikeStmt::make_callmethod(CExprPtr target, std::vector<int> arg_temps, int result)
{
    ClikeStmt s;
    s.kind = Kind::callmethod;
    s.ptr = std::move(target);
    s.callmethod_args = std::move(arg_temps);
    s.temp_id = result;
    return mkcs(std::move(s));
}

ClikeStmtPtr ClikeStmt::make_log(std::vector<CExprPtr> topics, std::vector<CExprPtr> data)
{
    ClikeStmt s;
    s.kind = Kind::log;
    s.topics = std::move(topics);
    s.args = std::move(data);
    return mkcs(std::move(s));
}

ClikeStmtPtr ClikeStmt::make_revert()
{
    ClikeStmt s;
    s.kind = Kind::revert;
    return mkcs(std::move(s));
}

std::string ClikeStmt::str() const
{
    std::ostringstream os;
    switch (kind)
    {
    case Kind::skip:
        os << "skip";
        break;
    case Kind::sstore:
        os << "sstore(" << ptr->str() << ", " << value->str() << ")";
        break;
    case Kind::set:
        os << "t" << temp_id << " = " << value->str();
        break;
    case Kind::call:
        if (temp_id >= 0)
            os << "t" << temp_id << " = ";
        os << callee << "(";
        for (size_t i = 0; i < args.size(); ++i)
            os << (i ? ", " : "") << args[i]->str();
        os << ")";
        break;
    case Kind::sequence:
        os << s1->str() << "; " << s2->str();
        break;
    case Kind::ifte:
        os << "if " << ptr->str() << " { " << s1->str() << " } else { " << s2->str() << " }";
        break;
    case Kind::loop:
        os << "loop { " << s1->str() << " }";
        break;
    case Kind::break_:
        os << "break";
        break;
    case Kind::done:
        os << "done";
        if (value)
            os << " " << value->str();
        break;
    case Kind::transfer:
        os << "transfer(" << ptr->str() << ", " << value->str() << ")";
        break;
    case Kind::callmethod:
        os << "callmethod";
        break;
    case Kind::log:
        os << "log(" << topics.size() << " topics, " << args.size() << " words)";
        break;
    case Kind::revert:
        os << "revert";
        break;
    }
    return os.str();
}

const ClikeFn* ClikeProgram::find(const std::string& fname) const
{
    for (const auto& f : functions)
        if (f.name == fname)
            return &f;
    return nullptr;
}

std::string CfgStmt::str() const
{
    std::ostringstream os;
    switch (kind)
    {
    case Kind::skip:
        os << "skip";
        break;
    case Kind::sstore:
        os << "sstore(" << ptr->str() << ", " << value->str() << ")";
        break;
    case Kind::set:
        os << "t" << temp_id << " = " << value->str();
        break;
    case Kind::transfer:
        os << "transfer(" << ptr->str() << ", " << value->str() << ")";
        break;
    case Kind::log:
        os << "log(" << topics.size() << ", " << args.size() << ")";
        break;
    case Kind::branch:
        os << "branch " << cond->str();
        break;
    case Kind::call:
        if (temp_id >= 0)
            os << "t" << temp_id << " = ";
        os << callee << "(...)";
        break;
    case Kind::done:
        os << "done";
        if (ret)
            os << " " << (*ret)->str();
        break;
    case Kind::callmethod:
        os << "callmethod";
        break;
    case Kind::revert:
        os << "revert";
        break;
    }
    return os.str();
}

void CfgFn::prune_unreachable()
{
    std::vector<bool> seen(nodes.size(), false);
    std::vector<int> stack{entry};
    while (!stack.empty())
    {
        int n = stack.back();
        stack.pop_back();
        if (n < 0 || n >= static_cast<int>(nodes.size()) || seen[static_cast<size_t>(n)])
            continue;
        seen[static_cast<size_t>(n)] = true;
        for (int s : nodes[static_cast<size_t>(n)].succ)
            stack.push_back(s);
    }
    std::vector<int> remap(nodes.size(), -1);
    std::vector<CfgNode> kept;
    for (size_t i = 0; i < nodes.size(); ++i)
    {
        if (seen[i])
        {
            remap[i] = static_cast<int>(kept.size());
            kept.push_back(std::move(nodes[i]));
        }
    }
    for (auto& n : kept)
        for (int& s : n.succ)
            s = remap[static_cast<size_t>(s)];
    entry = remap[static_cast<size_t>(entry)];
    nodes = std::move(kept);
}

const CfgFn* CgraphProgram::find(const std::string& fname) const
{
    for (const auto& f : functions)
        if (f.name == fname)
            return &f;
    return nullptr;
}

std::string Terminator::str() const
{
    std::ostringstream os;
    switch (kind)
    {
    case Kind::jump:
        os << "jump " << target;
        break;
    case Kind::branch:
        os << "branch " << cond->str() << " ? " << target << " : " << target2;
        break;
    case Kind::call:
        os << "call " << callee << " -> " << cont;
        break;
    case Kind::done:
        os << "done";
        if (ret)
            os << " " << (*ret)->str();
        break;
    case Kind::revert:
        os << "revert";
        break;
    }
    return os.str();
}

const BasicBlock* CbasicFn::find_block(const Label& l) const
{
    for (const auto& b : blocks)
        if (b.label == l)
            return &b;
    return nullptr;
}

const CbasicFn* CbasicProgram::find(const std::string& fname) const
{
    for (const auto& f : functions)
        if (f.name == fname)
            return &f;
    return nullptr;
}

std::string LinStmt::str() const
{
    std::ostringstream os;
    switch (kind)
    {
    case Kind::label:
        os << label << ":";
        break;
    case Kind::fetchargs:
        os << "fetchargs";
        break;
    case Kind::intro:
        os << "intro";
        break;
    case Kind::skip:
        os << "skip";
        break;
    case Kind::set:
        os << "t" << temp_id << " = " << value->str();
        break;
    case Kind::sstore:
        os << "sstore(" << ptr->str() << ", " << value->str() << ")";
        break;
    case Kind::transfer:
        os << "transfer(" << ptr->str() << ", " << value->str() << ")";
        break;
    case Kind::log:
        os << "log(" << topics.size() << ", " << args.size() << ")";
        break;
    case Kind::jump:
        os << "jump " << label;
        break;
    case Kind::jumpi:
        os << "jumpi " << cond->str() << " -> " << label;
        break;
    case Kind::call:
        if (temp_id >= 0)
            os << "t" << temp_id << " = ";
        os << "call " << callee << " ret " << cont;
        break;
    case Kind::done:
        os << "done";
        if (ret)
            os << " " << (*ret)->str();
        break;
    case Kind::callmethod:
        os << "callmethod";
        break;
    case Kind::revert:
        os << "revert";
        break;
    }
    return os.str();
}

const ClinearFn* ClinearProgram::find(const std::string& fname) const
{
    for (const auto& f : functions)
        if (f.name == fname)
            return &f;
    return nullptr;
}

std::string StackedExpr::str() const
{
    std::ostringstream os;
    switch (kind)
    {
    case Kind::const256:
        os << "const256 " << word_to_dec(literal);
        break;
    case Kind::global:
        os << "global " << global_name;
        break;
    case Kind::temp:
        os << "temp " << temp_index;
        break;
    case Kind::sload:
        os << "sload";
        break;
    case Kind::unop:
        os << "unop " << ir_unop_name(un);
        break;
    case Kind::binop:
        os << "binop " << ir_binop_name(bin) << (swapped ? " swapped" : "");
        break;
    case Kind::call0:
        os << "call0 " << builtin0_name(b0);
        break;
    case Kind::call1:
        os << "call1 " << builtin1_name(b1);
        break;
    }
    return os.str();
}

std::string StackedStmt::str() const
{
    std::ostringstream os;
    switch (kind)
    {
    case Kind::skip:
        os << "skip";
        break;
    case Kind::rvalue:
        os << "rvalue(" << expr.str() << ")";
        break;
    case Kind::pushvoid:
        os << "pushvoid";
        break;
    case Kind::pop:
        os << "pop";
        break;
    case Kind::assign:
        os << "assign";
        break;
    case Kind::set:
        os << "set " << n;
        break;
    case Kind::done:
        os << "done(" << n << (returns_value ? ", value" : ", void") << ")";
        break;
    case Kind::pushlabel:
        os << "pushlabel " << label;
        break;
    case Kind::label:
        os << label << ":";
        break;
    case Kind::jump_call:
        os << "jump_call";
        break;
    case Kind::jump_internal:
        os << "jump_internal";
        break;
    case Kind::jumpi:
        os << "jumpi";
        break;
    case Kind::transfer:
        os << "transfer";
        break;
    case Kind::callmethod:
        os << "callmethod";
        break;
    case Kind::log:
        os << "log(" << log_topics << ", " << log_data << ")";
        break;
    case Kind::revert:
        os << "revert";
        break;
    case Kind::fetchargs:
        os << "fetchargs";
        break;
    }
    return os.str();
}

const StackedFn* StackedProgram::find(const std::string& fname) const
{
    for (const auto& f : functions)
        if (f.name == fname)
            return &f;
    return nullptr;
}

std::map<Label, std::pair<int, int>> StackedProgram::label_index() const
{
    std::map<Label, std::pair<int, int>> out;
    for (size_t fi = 0; fi < functions.size(); ++fi)
    {
        const auto& code = functions[fi].code;
        for (size_t si = 0; si < code.size(); ++si)
        {
            if (code[si].kind == StackedStmt::Kind::label)
            {
                auto [it, fresh] = out.emplace(code[si].label,
                                               std::make_pair(static_cast<int>(fi),
                                                              static_cast<int>(si)));
                if (!fresh)
                    fail("DuplicateLabel", "label " + code[si].label + " defined twice");
            }
        }
    }
    return out;
}

PushArg PushArg::of_value(Value v)
{
    PushArg p;
    p.value = std::move(v);
    return p;
}

PushArg PushArg::of_label(Label l)
{
    PushArg p;
    p.is_label = true;
    p.label = std::move(l);
    return p;
}

bool PushArg::operator==(const PushArg& o) const
{
    if (is_label != o.is_label)
        return false;
    return is_label ? label == o.label : value == o.value;
}

std::string PushArg::str() const
{
    return is_label ? "@" + label : value.str();
}

bool ExStmt::operator==(const ExStmt& o) const
{
    if (kind != o.kind)
        return false;
    switch (kind)
    {
    case Kind::push:
        return push == o.push;
    case Kind::dup:
    case Kind::swap:
        return n == o.n;
    case Kind::constructordataload:
        return n == o.n;
    case Kind::unop:
        return un == o.un;
    case Kind::binop:
        return bin == o.bin && swapped == o.swapped;
    case Kind::call0:
        return b0 == o.b0;
    case Kind::call1:
        return b1 == o.b1;
    case Kind::done:
        return fn_kind == o.fn_kind && returns_value == o.returns_value;
    case Kind::label:
        return label == o.label;
    case Kind::log:
        return log_topics == o.log_topics && log_data == o.log_data;
    case Kind::callmethod:
        return cm_args == o.cm_args && cm_rets == o.cm_rets;
    default:
        return true;
    }
}

std::string ExStmt::str() const
{
    std::ostringstream os;
    switch (kind)
    {
    case Kind::push:
        os << "push " << push.str();
        break;
    case Kind::dup:
        os << "dup " << n;
        break;
    case Kind::sload:
        os << "sload";
        break;
    case Kind::unop:
        os << "unop " << ir_unop_name(un);
        break;
    case Kind::binop:
        os << "binop " << ir_binop_name(bin);
        break;
    case Kind::call0:
        os << "call0 " << builtin0_name(b0);
        break;
    case Kind::call1:
        os << "call1 " << builtin1_name(b1);
        break;
    case Kind::skip:
        os << "skip";
        break;
    case Kind::pop:
        os << "pop";
        break;
    case Kind::sstore:
        os << "sstore";
        break;
    case Kind::swap:
        os << "swap " << n;
        break;
    case Kind::done:
        os << "done("
           << (fn_kind == FunctionKind::constructor
                   ? "ctor"
                   : (fn_kind == FunctionKind::method ? "method" : "internal"))
           << (returns_value ? ", value" : ", void") << ")";
        break;
    case Kind::label:
        os << label << ":";
        break;
    case Kind::jump:
        os << "jump";
        break;
    case Kind::jumpi:
        os << "jumpi";
        break;
    case Kind::transfer:
        os << "transfer";
        break;
    case Kind::callmethod:
        os << "callmethod(" << cm_args << ", " << cm_rets << ")";
        break;
    case Kind::log:
        os << "log(" << log_topics << ", " << log_data << ")";
        break;
    case Kind::revert:
        os << "revert";
        break;
    case Kind::calldataload:
        os << "calldataload";
        break;
    case Kind::constructordataload:
        os << "constructordataload " << n;
        break;
    }
    return os.str();
}

const ExprlessFn* ExprlessProgram::find(const std::string& fname) const
{
    for (const auto& f : functions)
        if (f.name == fname)
            return &f;
    return nullptr;
}

std::map<Label, std::pair<int, int>> ExprlessProgram::label_index() const
{
    std::map<Label, std::pair<int, int>> out;
    for (size_t fi = 0; fi < functions.size(); ++fi)
    {
        const auto& code = functions[fi].code;
        for (size_t si = 0; si < code.size(); ++si)
        {
            if (code[si].kind == ExStmt::Kind::label)
            {
                auto [it, fresh] = out.emplace(code[si].label,
                                               std::make_pair(static_cast<int>(fi),
                                                              static_cast<int>(si)));
                if (!fresh)
                    fail("DuplicateLabel", "label " + code[si].label + " defined twice");
            }
        }
    }
    return out;
}

static std::map<Label, int> labels_of(const std::vector<ExStmt>& code)
{
    std::map<Label, int> out;
    for (size_t i = 0; i < code.size(); ++i)
    {
        if (code[i].kind == ExStmt::Kind::label)
        {
            auto [it, fresh] = out.emplace(code[i].label, static_cast<int>(i));
            if (!fresh)
                fail("DuplicateLabel", "label " + code[i].label + " defined twice");
        }
    }
    return out;
}

std::map<Label, int> MethodicalProgram::runtime_labels() const
{
    return labels_of(runtime_code);
}

std::map<Label, int> MethodicalProgram::deploy_labels() const
{
    return labels_of(deploy_code);
}

const MethodEntry* MethodicalProgram::find_method(const std::string& mname) const
{
    for (const auto& m : methods)
        if (m.name == mname)
            return &m;
    return nullptr;
}

}  // namespace minicc
