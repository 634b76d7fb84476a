#pragma once

#include <string>

#include "json.hpp"

#include "hsi/cerf.hpp"
#include "hsi/correspondence.hpp"
#include "hsi/hsi_calc.hpp"
#include "hsi/moduli.hpp"
#include "hsi/twist_model.hpp"

// JSON forms of the value types. Readers throw Error(Errc::Schema) naming the offending field
// as a path such as "$.pieces[2].curve".
namespace hsi::io {

using Json = nlohmann::json;

Json to_json(const SU2Element& g);
Json to_json(const Su2Vector& v);
Json to_json(const Word& w);
Json to_json(const Substitution& s);
Json to_json(const ModuliPoint& m);
Json to_json(const CutModuliPoint& c);
Json to_json(const ElemCob& e);
Json to_json(const CobWord& w);
Json to_json(const Correspondence& c);
Json to_json(const GradedGroup& g);
Json to_json(const PlumbingTree& t);
Json to_json(const QANode& n);
Json to_json(const EmbeddednessReport& r);
Json to_json(const CleanIntersectionReport& r);
Json to_json(const PlumbingResult& r);
Json to_json(const QAResult& r);
Json to_json(const IntMatrix& m);

SU2Element su2_from_json(const Json& j, const std::string& path = "$");
Su2Vector vector_from_json(const Json& j, const std::string& path = "$");
// either signed generator list [1, -2] or text "a1 b1^-1"
Word word_from_json(const Json& j, const std::string& path = "$");
Word parse_word(const std::string& text);
Substitution substitution_from_json(const Json& j, int genus, const std::string& path = "$");
ModuliPoint moduli_point_from_json(const Json& j, const std::string& path = "$");
CutModuliPoint cut_point_from_json(const Json& j, const std::string& path = "$");
ElemCob elem_cob_from_json(const Json& j, const std::string& path = "$");
CobWord cob_word_from_json(const Json& j, const std::string& path = "$");
// an ElemCob or a CobWord, composed
Correspondence correspondence_from_json(const Json& j, const std::string& path = "$");
GradedGroup graded_group_from_json(const Json& j, const std::string& path = "$");
PlumbingTree plumbing_from_json(const Json& j, const std::string& path = "$");
QANode qa_from_json(const Json& j, const std::string& path = "$");
AngleProfile profile_from_json(const Json& j, const std::string& path = "$");
Family family_from_json(const Json& j, const std::string& path = "$");
CerfMove move_from_json(const Json& j, const std::string& path = "$");
ClassBits class_from_json(const Json& j, const std::string& path = "$");
IntMatrix matrix_from_json(const Json& j, const std::string& path = "$");

}  // namespace hsi::io
