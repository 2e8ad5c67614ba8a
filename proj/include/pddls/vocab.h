#ifndef PDDLS_VOCAB_H_
#define PDDLS_VOCAB_H_

#include <string_view>

namespace pddls::vocab {

inline constexpr std::string_view kRdf = "http://www.w3.org/1999/02/22-rdf-syntax-ns#";
inline constexpr std::string_view kRdfType = "http://www.w3.org/1999/02/22-rdf-syntax-ns#type";
inline constexpr std::string_view kRdfFirst = "http://www.w3.org/1999/02/22-rdf-syntax-ns#first";
inline constexpr std::string_view kRdfRest = "http://www.w3.org/1999/02/22-rdf-syntax-ns#rest";
inline constexpr std::string_view kRdfNil = "http://www.w3.org/1999/02/22-rdf-syntax-ns#nil";
inline constexpr std::string_view kRdfLangString =
    "http://www.w3.org/1999/02/22-rdf-syntax-ns#langString";

inline constexpr std::string_view kRdfsSubClassOf = "http://www.w3.org/2000/01/rdf-schema#subClassOf";
inline constexpr std::string_view kRdfsDomain = "http://www.w3.org/2000/01/rdf-schema#domain";
inline constexpr std::string_view kRdfsRange = "http://www.w3.org/2000/01/rdf-schema#range";

inline constexpr std::string_view kXsd = "http://www.w3.org/2001/XMLSchema#";
inline constexpr std::string_view kXsdString = "http://www.w3.org/2001/XMLSchema#string";
inline constexpr std::string_view kXsdInteger = "http://www.w3.org/2001/XMLSchema#integer";
inline constexpr std::string_view kXsdDecimal = "http://www.w3.org/2001/XMLSchema#decimal";
inline constexpr std::string_view kXsdDouble = "http://www.w3.org/2001/XMLSchema#double";
inline constexpr std::string_view kXsdBoolean = "http://www.w3.org/2001/XMLSchema#boolean";

inline constexpr std::string_view kSh = "http://www.w3.org/ns/shacl#";
inline constexpr std::string_view kShNodeShape = "http://www.w3.org/ns/shacl#NodeShape";
inline constexpr std::string_view kShTargetClass = "http://www.w3.org/ns/shacl#targetClass";
inline constexpr std::string_view kShProperty = "http://www.w3.org/ns/shacl#property";
inline constexpr std::string_view kShPath = "http://www.w3.org/ns/shacl#path";
inline constexpr std::string_view kShEquals = "http://www.w3.org/ns/shacl#equals";
inline constexpr std::string_view kShLessThanOrEquals = "http://www.w3.org/ns/shacl#lessThanOrEquals";

// Vocabulary of the planning ontology, as used by the shipped fixtures.
inline constexpr std::string_view kPddlParam1 = "uri:pddl#param1";
inline constexpr std::string_view kPddlParam2 = "uri:pddl#param2";
inline constexpr std::string_view kPddlsEstablishedWith = "uri:pddls#establishedWith";

}  // namespace pddls::vocab

#endif  // PDDLS_VOCAB_H_
