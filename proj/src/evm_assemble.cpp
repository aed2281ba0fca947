// minicc: a MiniC-style contract compiler targeting the EVM
// Copyright 2026 The minicc Authors.
// SPDX-License-Identifier: Apache-2.0
#include "minicc/evm_assemble.hpp"

#include "minicc/errors.hpp"

#include <sstream>

namespace minicc
{
namespace
{
constexpr int64_t k_push2_max = 0xffff;
constexpr Word k_transfer_gas_arg = 2300;

uint8_t push_op_for_width(int width)
{
    return static_cast<uint8_t>(0x5f + width);
}

Op unop_op(IrUnop op)
{
    switch (op)
    {
        case IrUnop::lnot: return Op::ISZERO;
        case IrUnop::bnot: return Op::NOT;
        case IrUnop::ohash1: break;
    }
    throw InternalError("unop_op: ohash1 has a multi-instruction image");
}

Op binop_op(IrBinop op)
{
    switch (op)
    {
        case IrBinop::add: return Op::ADD;
        case IrBinop::sub: return Op::SUB;
        case IrBinop::mul: return Op::MUL;
        case IrBinop::div_: return Op::DIV;
        case IrBinop::mod: return Op::MOD;
        case IrBinop::bit_and: return Op::AND;
        case IrBinop::bit_or: return Op::OR;
        case IrBinop::bit_xor: return Op::XOR;
        case IrBinop::eq: return Op::EQ;
        case IrBinop::lt: return Op::LT;
        case IrBinop::gt: return Op::GT;
        case IrBinop::ohash2: break;
    }
    throw InternalError("binop_op: ohash2 has a multi-instruction image");
}

Op builtin0_op(Builtin0 b)
{
    switch (b)
    {
        case Builtin0::self_address: return Op::ADDRESS;
        case Builtin0::caller: return Op::CALLER;
        case Builtin0::callvalue: return Op::CALLVALUE;
        case Builtin0::block_number: return Op::NUMBER;
    }
    throw InternalError("builtin0_op: bad builtin");
}
}  // namespace

AsmItem AsmItem::plain(Op o)
{
    AsmItem it;
    it.op = static_cast<uint8_t>(o);
    return it;
}

AsmItem AsmItem::push_value(Word v)
{
    AsmItem it;
    int width = std::max(1, word_byte_width(v));
    it.op = push_op_for_width(width);
    it.has_imm = true;
    it.imm = v;
    return it;
}

AsmItem AsmItem::push_wide(Word v)
{
    if (v > k_push2_max)
        fail("ImmediateTooWide", "code offset " + word_to_dec(v) + " exceeds PUSH2 range");
    AsmItem it;
    it.op = push_op_for_width(2);
    it.has_imm = true;
    it.imm = v;
    return it;
}

AsmItem AsmItem::push_label(const Label& l)
{
    AsmItem it;
    it.op = push_op_for_width(2);
    it.has_imm = true;
    it.label = l;
    return it;
}

std::vector<AsmItem> expand_stmt(const ExStmt& s, const Label& abort_label,
                                 const CodeLayout& layout)
{
    using K = ExStmt::Kind;
    std::vector<AsmItem> out;
    auto emit = [&](Op o) { out.push_back(AsmItem::plain(o)); };
    auto emit_push = [&](Word v) { out.push_back(AsmItem::push_value(v)); };
    auto emit_wide = [&](Word v) { out.push_back(AsmItem::push_wide(v)); };

    switch (s.kind)
    {
        case K::push:
            if (s.push.is_label)
            {
                out.push_back(AsmItem::push_label(s.push.label));
            }
            else if (s.push.value.is_unit())
            {
                emit_push(0);
            }
            else if (s.push.value.is_int())
            {
                emit_push(s.push.value.word());
            }
            else
            {
                throw InternalError("expand_stmt: push of unresolved hash value");
            }
            break;
        case K::dup:
            if (s.n < 1 || s.n > 16)
                throw InternalError("expand_stmt: dup index out of range");
            out.push_back(AsmItem::plain(static_cast<Op>(0x7f + s.n)));
            break;
        case K::swap:
            if (s.n < 1 || s.n > 16)
                throw InternalError("expand_stmt: swap index out of range");
            out.push_back(AsmItem::plain(static_cast<Op>(0x8f + s.n)));
            break;
        case K::sload:
            emit(Op::SLOAD);
            break;
        case K::sstore:
            emit(Op::SSTORE);
            break;
        case K::pop:
            emit(Op::POP);
            break;
        case K::skip:
            break;
        case K::unop:
            if (s.un == IrUnop::ohash1)
            {
                // [x, ...] -> [keccak(w(x)), ...] via memory cell 0.
                emit_push(0);
                emit(Op::MSTORE);
                emit_push(32);
                emit_push(0);
                emit(Op::SHA3);
            }
            else
            {
                emit(unop_op(s.un));
            }
            break;
        case K::binop:
            if (s.swapped)
                emit(Op::SWAP1);
            if (s.bin == IrBinop::ohash2)
            {
                // [key, base, ...] -> [keccak(w(key) ++ w(base)), ...].
                emit_push(0);
                emit(Op::MSTORE);
                emit_push(32);
                emit(Op::MSTORE);
                emit_push(64);
                emit_push(0);
                emit(Op::SHA3);
            }
            else
            {
                emit(binop_op(s.bin));
            }
            break;
        case K::call0:
            emit(builtin0_op(s.b0));
            break;
        case K::call1:
            emit(Op::BALANCE);
            break;
        case K::label:
            emit(Op::JUMPDEST);
            break;
        case K::jump:
            emit(Op::JUMP);
            break;
        case K::jumpi:
            emit(Op::JUMPI);
            break;
        case K::done:
            switch (s.fn_kind)
            {
                case FunctionKind::internal:
                    emit(Op::JUMP);
                    break;
                case FunctionKind::method:
                    if (s.returns_value)
                    {
                        emit_push(0);
                        emit(Op::MSTORE);
                        emit_push(32);
                        emit_push(0);
                        emit(Op::RETURN);
                    }
                    else
                    {
                        emit(Op::STOP);
                    }
                    break;
                case FunctionKind::constructor:
                    // Copy the runtime image to memory 0 and return it.
                    emit_wide(layout.runtime_len);
                    emit_wide(layout.deploy_len);
                    emit_push(0);
                    emit(Op::CODECOPY);
                    emit_wide(layout.runtime_len);
                    emit_push(0);
                    emit(Op::RETURN);
                    break;
            }
            break;
        case K::transfer:
            // [amount, to, ...]: CALL with empty payload, then jump to
            // the unit's abort label unless it succeeded.
            emit_push(0);
            emit_push(0);
            emit_push(0);
            emit_push(0);
            emit(static_cast<Op>(0x7f + 5));  // DUP5: amount
            emit(static_cast<Op>(0x7f + 7));  // DUP7: to
            out.push_back(AsmItem::push_wide(k_transfer_gas_arg));
            emit(Op::CALL);
            emit(static_cast<Op>(0x8f + 2));  // SWAP2
            emit(Op::POP);
            emit(Op::POP);
            emit(Op::ISZERO);
            out.push_back(AsmItem::push_label(abort_label));
            emit(Op::JUMPI);
            break;
        case K::log:
        {
            // [d_0 .. d_{n2-1}, t_1 .. t_{n1}, ...]: stage data words
            // into memory cells 0..n2-1, then LOGn1.
            if (s.log_topics < 0 || s.log_topics > 4)
                throw InternalError("expand_stmt: log topic count out of range");
            for (int j = 0; j < s.log_data; ++j)
            {
                emit_push(static_cast<Word>(32) * j);
                emit(Op::MSTORE);
            }
            emit_push(static_cast<Word>(32) * s.log_data);
            emit_push(0);
            emit(static_cast<Op>(0xa0 + s.log_topics));
            break;
        }
        case K::revert:
            emit_push(0);
            emit_push(0);
            emit(Op::REVERT);
            break;
        case K::calldataload:
            emit(Op::CALLDATALOAD);
            break;
        case K::constructordataload:
        {
            // Constructor args ride behind the init code, where
            // calldata is not available; fetch via CODECOPY.
            Word src = layout.deploy_len + layout.runtime_len + static_cast<Word>(32) * s.n;
            emit_push(32);
            emit_wide(src);
            emit_push(0);
            emit(Op::CODECOPY);
            emit_push(0);
            emit(Op::MLOAD);
            break;
        }
        case K::callmethod:
            fail("UnsupportedFeature",
                 "cross-contract method calls cannot be assembled");
    }
    return out;
}

namespace
{
struct UnitPlan
{
    std::vector<std::vector<AsmItem>> images;
    std::vector<int64_t> stmt_offsets;
    std::map<Label, int64_t> label_offsets;
    int64_t total = 0;
};

UnitPlan plan_unit(const std::vector<ExStmt>& code, const Label& abort_label,
                   const CodeLayout& layout)
{
    UnitPlan plan;
    plan.images.reserve(code.size());
    int64_t pos = 0;
    for (const ExStmt& s : code)
    {
        plan.stmt_offsets.push_back(pos);
        if (s.kind == ExStmt::Kind::label)
        {
            auto [it, fresh] = plan.label_offsets.emplace(s.label, pos);
            (void)it;
            if (!fresh)
                fail("DuplicateLabel", "label defined twice: " + s.label);
        }
        auto image = expand_stmt(s, abort_label, layout);
        for (const AsmItem& item : image)
            pos += item.size();
        plan.images.push_back(std::move(image));
    }
    plan.stmt_offsets.push_back(pos);
    plan.total = pos;
    return plan;
}

AssembledUnit emit_unit(const UnitPlan& plan)
{
    AssembledUnit unit;
    unit.stmt_offsets = plan.stmt_offsets;
    unit.label_offsets = plan.label_offsets;
    unit.code.reserve(plan.total);
    for (const auto& image : plan.images)
    {
        for (const AsmItem& item : image)
        {
            Word imm = item.imm;
            if (!item.label.empty())
            {
                auto it = plan.label_offsets.find(item.label);
                if (it == plan.label_offsets.end())
                    fail("UnknownLabel", "jump target not defined: " + item.label);
                if (it->second > k_push2_max)
                    fail("ImmediateTooWide", "label offset exceeds PUSH2 range: " + item.label);
                imm = it->second;
            }
            unit.code.push_back(item.op);
            if (item.has_imm)
            {
                int width = push_size(item.op);
                for (int i = width - 1; i >= 0; --i)
                    unit.code.push_back(static_cast<uint8_t>((imm >> (8 * i)) & 0xff));
            }
        }
    }
    if (static_cast<int64_t>(unit.code.size()) != plan.total)
        throw InternalError("emit_unit: layout size mismatch");
    return unit;
}
}  // namespace

int AssembledUnit::stmt_at(int64_t pos) const
{
    if (stmt_offsets.empty() || pos < 0 || pos >= stmt_offsets.back())
        return -1;
    auto it = std::upper_bound(stmt_offsets.begin(), stmt_offsets.end(), pos);
    return static_cast<int>(it - stmt_offsets.begin()) - 1;
}

Bytes Artifact::init_code() const
{
    Bytes out = deploy.code;
    out.insert(out.end(), runtime.code.begin(), runtime.code.end());
    return out;
}

Artifact assemble(MethodicalProgram& prog)
{
    // Sizing pass: all layout-dependent immediates are fixed-width, so
    // unit lengths do not depend on the measured layout.
    CodeLayout provisional;
    provisional.known = false;
    int64_t runtime_len =
        plan_unit(prog.runtime_code, prog.runtime_abort, provisional).total;
    int64_t deploy_len =
        plan_unit(prog.deploy_code, prog.deploy_abort, provisional).total;

    CodeLayout layout;
    layout.deploy_len = deploy_len;
    layout.runtime_len = runtime_len;
    layout.known = true;
    int64_t args_end = deploy_len + runtime_len + 32 * static_cast<int64_t>(prog.ctor_args);
    if (args_end > k_push2_max)
        fail("ImmediateTooWide", "assembled image exceeds PUSH2 addressing");

    Artifact art;
    art.layout = layout;
    art.runtime = emit_unit(plan_unit(prog.runtime_code, prog.runtime_abort, layout));
    art.deploy = emit_unit(plan_unit(prog.deploy_code, prog.deploy_abort, layout));
    if (static_cast<int64_t>(art.runtime.code.size()) != runtime_len ||
        static_cast<int64_t>(art.deploy.code.size()) != deploy_len)
        throw InternalError("assemble: sizing pass disagrees with emission");
    prog.code_layout = layout;
    return art;
}

Bytes reassemble(const std::vector<Inst>& insts)
{
    Bytes out;
    for (const Inst& inst : insts)
    {
        out.push_back(inst.op);
        out.insert(out.end(), inst.immediate.begin(), inst.immediate.end());
    }
    return out;
}

std::string format_listing(const std::vector<Inst>& insts)
{
    std::ostringstream os;
    for (const Inst& inst : insts)
    {
        char buf[16];
        std::snprintf(buf, sizeof(buf), "%04llx: ", static_cast<unsigned long long>(inst.pos));
        os << buf << inst.str() << "\n";
    }
    return os.str();
}

}  // namespace minicc
