// minicc: a MiniC-style contract compiler targeting the EVM
// Copyright 2026 The minicc Authors.
// SPDX-License-Identifier: Apache-2.0
#include "minicc/differential.hpp"

#include "minicc/errors.hpp"
#include "minicc/ir_exec.hpp"
#include "minicc/memory.hpp"
#include "minicc/pipeline.hpp"
#include "minicc/refexec.hpp"
#include "minicc/relations.hpp"

#include <functional>
#include <sstream>

namespace minicc
{
namespace
{
constexpr Word k_genesis_balance = Word(1) << 200;

/// Storage and balances one symbolic phase carries across
/// transactions.
struct SymState
{
    Memory mem;
    std::map<Word, Word> balances;
};

/// What one phase observed for one transaction.
struct RunResult
{
    bool threw = false;
    std::string error;
    bool reverted = false;
    bool oog = false;
    Value ret = Value::unit();
    std::vector<LogRecord> events;
    int64_t gas = 0;
    SymState post;
};

bool balances_equal(const std::map<Word, Word>& a, const std::map<Word, Word>& b)
{
    for (const auto& [k, v] : a)
    {
        auto it = b.find(k);
        Word other = it == b.end() ? Word(0) : it->second;
        if (v != other)
            return false;
    }
    for (const auto& [k, v] : b)
        if (v != 0 && !a.count(k))
            return false;
    return true;
}

MachineEnv env_for(const TxSpec& tx, const Word& self, const SymState& pre)
{
    MachineEnv env;
    env.self_address = self;
    env.caller = tx.caller;
    env.callvalue = tx.value;
    env.block_number = tx.block_number;
    env.balances = pre.balances;
    // The transaction layer moves the payment before the code runs and
    // discards the move when the run reverts; mirror both here.
    env.balances[tx.caller] -= tx.value;
    env.balances[self] += tx.value;
    return env;
}

using PhaseFn = std::function<ExecOutcome(const Memory&, MachineEnv)>;

RunResult run_phase(const SymState& pre, const TxSpec& tx, const Word& self,
                    const PhaseFn& f)
{
    RunResult r;
    r.post = pre;
    try
    {
        ExecOutcome out = f(pre.mem, env_for(tx, self, pre));
        r.reverted = out.reverted;
        r.ret = out.ret;
        r.events = out.events;
        r.gas = out.gas_bound;
        if (!out.reverted)
            r.post = SymState{std::move(out.state), std::move(out.balances)};
    }
    catch (const Error& e)
    {
        r.threw = true;
        r.error = e.what();
    }
    return r;
}

std::string compare_observables(const RunResult& a, const RunResult& b)
{
    if (a.threw || b.threw)
    {
        if (a.threw && b.threw && a.error == b.error)
            return "";
        return "exception: [" + (a.threw ? a.error : "none") + "] vs [" +
               (b.threw ? b.error : "none") + "]";
    }
    if (a.reverted != b.reverted)
        return std::string("status: ") + (a.reverted ? "revert" : "complete") +
               " vs " + (b.reverted ? "revert" : "complete");
    if (!a.reverted && !(a.ret == b.ret))
        return "return value: " + a.ret.str() + " vs " + b.ret.str();
    if (!(a.post.mem == b.post.mem))
        return "storage";
    if (!balances_equal(a.post.balances, b.post.balances))
        return "balances";
    if (a.events != b.events)
        return "events";
    return "";
}

std::vector<EvmLogEntry> logs_image(const std::vector<LogRecord>& events)
{
    std::vector<EvmLogEntry> out;
    for (const auto& ev : events)
    {
        EvmLogEntry entry;
        for (const auto& t : ev.topics)
            entry.topics.push_back(value_to_w256(t));
        for (const auto& d : ev.data)
        {
            Bytes32 w = word_to_bytes32(value_to_w256(d));
            entry.data.insert(entry.data.end(), w.begin(), w.end());
        }
        out.push_back(std::move(entry));
    }
    return out;
}

/// Balance view of the world, zero entries dropped.
std::map<Word, Word> world_balances(const World& w)
{
    std::map<Word, Word> out;
    for (const auto& [addr, acct] : w.accounts)
        if (acct.balance != 0)
            out[addr] = acct.balance;
    return out;
}
}  // namespace

CompiledContract compile_phases(const Program& p)
{
    CompiledContract cc;
    cc.clike = to_clike(p);
    cc.cgraph = allocate_program(to_cgraph(cc.clike));
    cc.cbasic = to_cbasic(cc.cgraph);
    cc.clinear = linearize(cc.cbasic);
    cc.stacked = to_stacked(cc.clinear);
    cc.exprless = to_expressionless(cc.stacked);
    cc.methodical = methodize(cc.exprless);
    cc.artifact = assemble(cc.methodical);
    return cc;
}

void ValidationReport::add(PhaseVerdict v)
{
    if (!v.pass)
    {
        pass = false;
        if (first_failure.empty())
            first_failure = "tx " + std::to_string(v.tx_index) + " " + v.phases +
                            ": " + v.divergence;
    }
    phases.push_back(std::move(v));
}

void ValidationReport::add(GasVerdict v)
{
    if (!v.ok)
    {
        pass = false;
        if (first_failure.empty())
            first_failure = "tx " + std::to_string(v.tx_index) + " gas bound " +
                            std::to_string(v.source_bound) + " < evm " +
                            std::to_string(v.evm_gas_used);
    }
    gas.push_back(std::move(v));
}

std::string ValidationReport::str() const
{
    std::ostringstream out;
    int failed = 0;
    for (const auto& v : phases)
        if (!v.pass)
        {
            ++failed;
            out << "tx " << v.tx_index << " " << v.phases << ": " << v.divergence
                << "\n";
        }
    for (const auto& g : gas)
        if (!g.ok)
        {
            ++failed;
            out << "tx " << g.tx_index << " gas: bound " << g.source_bound
                << " exceeded by evm " << g.evm_gas_used << "\n";
        }
    out << (pass ? "pass" : "FAIL") << ": " << phases.size() << " phase checks, "
        << gas.size() << " gas checks, " << relation_checks
        << " relation checks, " << failed << " failures";
    return out.str();
}

Bytes encode_calldata(const Word& selector, const std::vector<Value>& args)
{
    Bytes data;
    Bytes32 sel = word_to_bytes32(selector);
    data.insert(data.end(), sel.begin(), sel.end());
    for (const auto& a : args)
    {
        Bytes32 w = word_to_bytes32(value_to_w256(a));
        data.insert(data.end(), w.begin(), w.end());
    }
    return data;
}

Bytes encode_ctor_data(const Bytes& init_code, const std::vector<Value>& args)
{
    Bytes data = init_code;
    for (const auto& a : args)
    {
        Bytes32 w = word_to_bytes32(value_to_w256(a));
        data.insert(data.end(), w.begin(), w.end());
    }
    return data;
}

ValidationReport differential_run(const Program& p, const std::vector<TxSpec>& txs)
{
    ValidationReport report;
    CompiledContract cc = compile_phases(p);
    const CodeLayout& layout = cc.methodical.code_layout;

    if (txs.empty())
        return report;
    if (!txs.front().deploy)
        throw InternalError("differential_run: first transaction must deploy");

    // Shared genesis: every caller starts with the same large balance
    // on the symbolic side and in the world.
    SymState genesis;
    World world;
    for (const auto& tx : txs)
    {
        genesis.balances[tx.caller] = k_genesis_balance;
        world.account(tx.caller).balance = k_genesis_balance;
    }

    enum
    {
        ph_reference,
        ph_clike,
        ph_cgraph,
        ph_cbasic,
        ph_clinear,
        ph_stacked,
        ph_exprless,
        ph_methodical,
        ph_count,
    };
    static const char* names[ph_count] = {
        "reference", "clike",  "cgraph",   "cbasic",
        "clinear",   "stacked", "exprless", "methodical",
    };
    std::vector<SymState> states(ph_count, genesis);

    Word contract = 0;
    for (size_t txi = 0; txi < txs.size(); ++txi)
    {
        const TxSpec& tx = txs[txi];
        int index = static_cast<int>(txi);
        if (tx.deploy && txi != 0)
            throw InternalError("differential_run: only the first transaction may deploy");

        // Bytecode side first; deployments tell us the contract address.
        world.block_number = tx.block_number;
        TxRequest req;
        req.from = tx.caller;
        req.value = tx.value;
        req.gas_limit = tx.gas_limit;
        if (tx.deploy)
        {
            req.data = encode_ctor_data(cc.artifact.init_code(), tx.args);
        }
        else
        {
            req.to = contract;
            const MethodEntry* me = cc.methodical.find_method(tx.method);
            if (!me)
                fail("UnknownIdent", "no method named " + tx.method);
            req.data = encode_calldata(me->selector, tx.args);
        }
        TxReceipt receipt = run_transaction(world, req);
        if (tx.deploy)
            contract = *receipt.created;
        const Word self = contract;

        // Symbolic phases, unmetered.
        std::vector<RunResult> results(ph_count);
        auto phase = [&](int which, const PhaseFn& f) {
            results[which] = run_phase(states[which], tx, self, f);
        };
        if (tx.deploy)
        {
            phase(ph_reference, [&](const Memory& m, MachineEnv e) {
                return run_constructor(p, m, std::move(e), tx.args);
            });
            phase(ph_clike, [&](const Memory& m, MachineEnv e) {
                return clike_run_constructor(cc.clike, m, std::move(e), tx.args);
            });
            phase(ph_cgraph, [&](const Memory& m, MachineEnv e) {
                return cgraph_run_constructor(cc.cgraph, m, std::move(e), tx.args);
            });
            phase(ph_cbasic, [&](const Memory& m, MachineEnv e) {
                return cbasic_run_constructor(cc.cbasic, m, std::move(e), tx.args);
            });
            phase(ph_clinear, [&](const Memory& m, MachineEnv e) {
                return clinear_run_constructor(cc.clinear, m, std::move(e), tx.args);
            });
            phase(ph_stacked, [&](const Memory& m, MachineEnv e) {
                return stacked_run_constructor(cc.stacked, m, std::move(e), tx.args,
                                               layout);
            });
            phase(ph_exprless, [&](const Memory& m, MachineEnv e) {
                return exprless_run_constructor(cc.exprless, m, std::move(e),
                                                tx.args, layout);
            });
        }
        else
        {
            phase(ph_reference, [&](const Memory& m, MachineEnv e) {
                return run_method(p, m, std::move(e), tx.method, tx.args);
            });
            phase(ph_clike, [&](const Memory& m, MachineEnv e) {
                return clike_run_method(cc.clike, m, std::move(e), tx.method,
                                        tx.args);
            });
            phase(ph_cgraph, [&](const Memory& m, MachineEnv e) {
                return cgraph_run_method(cc.cgraph, m, std::move(e), tx.method,
                                         tx.args);
            });
            phase(ph_cbasic, [&](const Memory& m, MachineEnv e) {
                return cbasic_run_method(cc.cbasic, m, std::move(e), tx.method,
                                         tx.args);
            });
            phase(ph_clinear, [&](const Memory& m, MachineEnv e) {
                return clinear_run_method(cc.clinear, m, std::move(e), tx.method,
                                          tx.args);
            });
            phase(ph_stacked, [&](const Memory& m, MachineEnv e) {
                return stacked_run_method(cc.stacked, m, std::move(e), tx.method,
                                          tx.args, layout);
            });
            phase(ph_exprless, [&](const Memory& m, MachineEnv e) {
                return exprless_run_method(cc.exprless, m, std::move(e), tx.method,
                                           tx.args, layout);
            });
        }

        // Methodical runs under the transaction's gas limit.
        RunResult& mres = results[ph_methodical];
        mres.post = states[ph_methodical];
        try
        {
            MethodicalRun mr =
                tx.deploy
                    ? methodical_run_constructor(
                          cc.methodical, states[ph_methodical].mem,
                          env_for(tx, self, states[ph_methodical]), tx.args,
                          tx.gas_limit)
                    : methodical_run_method(
                          cc.methodical, states[ph_methodical].mem,
                          env_for(tx, self, states[ph_methodical]), tx.method,
                          tx.args, tx.gas_limit);
            mres.reverted = mr.outcome.reverted;
            mres.oog = mr.out_of_gas;
            mres.ret = mr.outcome.ret;
            mres.events = mr.outcome.events;
            mres.gas = mr.outcome.gas_bound;
            if (!mr.outcome.reverted)
                mres.post = SymState{std::move(mr.outcome.state),
                                     std::move(mr.outcome.balances)};
        }
        catch (const Error& e)
        {
            mres.threw = true;
            mres.error = e.what();
        }

        // Adjacent symbolic pairs agree on everything observable.
        for (int left = ph_reference; left < ph_methodical; ++left)
        {
            int right = left + 1;
            PhaseVerdict v;
            v.phases = std::string(names[left]) + "/" + names[right];
            v.tx_index = index;
            if (right == ph_methodical && mres.oog)
            {
                // Unmetered phases complete; the metered one may stop
                // short, but only if it kept its hands off the state.
                bool untouched =
                    mres.post.mem == states[ph_methodical].mem &&
                    balances_equal(mres.post.balances,
                                   states[ph_methodical].balances);
                v.pass = untouched;
                if (!untouched)
                    v.divergence = "state changed by an out-of-gas run";
            }
            else
            {
                std::string diff =
                    compare_observables(results[left], results[right]);
                v.pass = diff.empty();
                v.divergence = diff;
            }
            report.add(std::move(v));
            ++report.relation_checks;
        }

        // Gas relations along the chain: bounds shrink through the
        // bound phases and the exact phases agree to the unit.
        {
            PhaseVerdict v;
            v.phases = "gas chain";
            v.tx_index = index;
            bool all_ran = true;
            for (int i = 0; i < ph_count; ++i)
                all_ran = all_ran && !results[i].threw;
            if (all_ran)
            {
                for (int left = ph_reference; left < ph_stacked && v.pass; ++left)
                    if (results[left + 1].gas > results[left].gas)
                    {
                        v.pass = false;
                        v.divergence = std::string(names[left + 1]) + " bound " +
                                       std::to_string(results[left + 1].gas) +
                                       " above " + names[left] + " " +
                                       std::to_string(results[left].gas);
                    }
                if (v.pass && results[ph_exprless].gas != results[ph_stacked].gas)
                {
                    v.pass = false;
                    v.divergence = "stacked and expressionless fees differ";
                }
                if (v.pass && !mres.oog && mres.gas != results[ph_exprless].gas)
                {
                    v.pass = false;
                    v.divergence =
                        "methodical fee " + std::to_string(mres.gas) +
                        " differs from expressionless " +
                        std::to_string(results[ph_exprless].gas);
                }
            }
            report.add(std::move(v));
        }

        // Bytecode vs the methodical machine.
        {
            PhaseVerdict v;
            v.phases = "methodical/evm";
            v.tx_index = index;
            std::string diff;
            bool evm_failed = !receipt.success && !receipt.reverted;
            if (mres.threw)
                diff = "exception: " + mres.error;
            else if (mres.oog != evm_failed)
                diff = "status: " + std::string(mres.oog ? "out-of-gas" : "ran") +
                       " vs evm " + receipt.status;
            else if (!mres.oog && mres.reverted != receipt.reverted)
                diff = std::string("status: ") +
                       (mres.reverted ? "revert" : "complete") + " vs evm " +
                       receipt.status;
            else if (receipt.gas_used != mres.gas)
                diff = "gas: " + std::to_string(mres.gas) + " vs evm " +
                       std::to_string(receipt.gas_used);
            if (diff.empty() && receipt.success)
            {
                if (tx.deploy)
                {
                    if (receipt.output != cc.artifact.runtime.code)
                        diff = "deployed code differs from the runtime unit";
                }
                else
                {
                    const MethodEntry* me = cc.methodical.find_method(tx.method);
                    Bytes expect;
                    if (me->returns_value)
                    {
                        Bytes32 w = word_to_bytes32(value_to_w256(mres.ret));
                        expect.assign(w.begin(), w.end());
                    }
                    if (receipt.output != expect)
                        diff = "return payload differs";
                }
                if (diff.empty() && logs_image(mres.events) != receipt.logs)
                    diff = "events";
            }
            if (diff.empty())
            {
                std::string why;
                const EvmAccount* acct = world.find_account(contract);
                std::map<Word, Word> evm_storage =
                    acct ? acct->storage : std::map<Word, Word>{};
                ++report.relation_checks;
                if (!rel_store(mres.post.mem, evm_storage, &why))
                    diff = "storage: " + why;
                else if (!balances_equal(mres.post.balances, world_balances(world)))
                    diff = "balances";
            }
            v.pass = diff.empty();
            v.divergence = diff;
            report.add(std::move(v));
        }

        // The headline bound: bytecode gas never exceeds the source
        // figure the reference executor charged.
        {
            GasVerdict g;
            g.tx_index = index;
            g.source_bound = results[ph_reference].gas;
            g.evm_gas_used = receipt.gas_used;
            bool evm_failed = !receipt.success && !receipt.reverted;
            g.ok = evm_failed || receipt.gas_used <= g.source_bound;
            report.add(std::move(g));
        }

        for (int i = 0; i < ph_count; ++i)
            states[i] = std::move(results[i].post);
    }
    return report;
}

}  // namespace minicc
