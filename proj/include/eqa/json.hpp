// JSON encodings of terms, proofs, models and analyzer reports.  Field
// names are stable; field order follows declaration order.

#pragma once

#include <json.hpp>

#include "eqa/analyzers.hpp"
#include "eqa/catalog.hpp"
#include "eqa/model.hpp"
#include "eqa/proof.hpp"
#include "eqa/prover.hpp"
#include "eqa/term.hpp"

namespace eqa {

using Json = nlohmann::ordered_json;

Json to_json(const Term& t);
Json to_json(const Equation& eq);
Json to_json(const Substitution& s);
Json to_json(const Signature& sig);
Json to_json(const Theory& t);
Json to_json(const Proof& p);
Json to_json(const Model& m);
Json to_json(const Assignment& a);
Json to_json(const Countermodel& c);
Json to_json(const OrderRelation& o);
Json to_json(const ProveResult& r);
Json to_json(const Verdict& v);
Json to_json(const DeterminationReport& r);
Json to_json(const ClosureTermReport& r);
Json to_json(const ProtomodularReport& r);
Json to_json(const NoGoCertificate& c);
Json to_json(const NoGoResult& r);
Json to_json(const MalcevResult& r);
Json to_json(const AntisymmetryCheck& r);
Json to_json(const GaloisResult& r);
Json to_json(const AxiomEntry& a);

}  // namespace eqa
