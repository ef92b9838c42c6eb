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

// Concrete text syntax for terms and their parameters.
//
//   alt   := par ('+' par)*                       right-nested
//   par   := merge ('||' merge)*                  right-nested
//   merge := seq (('|_' | '>>') seq)*             left-nested
//   seq   := atom ('.' atom)*                     right-nested
//   atom  := 'dd' | 'dd' '(' ('abs'|'rel') T ')'
//          | ps(c,d; abs|rel S; P) | pr(c,d; abs|rel S..T; P)
//          | es(c,d; S; P) | er(c,d; S; P)
//          | 'L' '{' chans '}' '@' S ':' sigma '(' term ')'
//          | 'mp' '[' pattern ']' '(' term ')'
//          | 'ap' '[' pattern ']' '(' term ',' term ')'
//          | 'rec' VAR '{' (VAR '=' term ';')+ '}'
//          | '(' term ')' | VAR
//   sigma   := '{' (record (',' record)*)? '}',  record := '(' c ',' d ',' S ',' P ')'
//   pattern := ('recv'|'send'|'any') '(' chans ')' (':' d | ':' '{' ds '}')?  joined by '|'
//
// S is an integer or a fraction a/b; T additionally admits 'inf'.  P is a
// point (x,y,z).  Keywords only count as such when followed by their own
// punctuation, so a variable may be called `L` or `rec`.

#ifndef STPA_SYNTAX_HPP_
#define STPA_SYNTAX_HPP_

#include <string>
#include <string_view>

#include "stpa/terms.hpp"

namespace stpa {

Term ParseTerm(std::string_view text);
CommState ParseSigma(std::string_view text);
ActionPattern ParsePattern(std::string_view text);
ChannelSet ParseChannels(std::string_view text);  // "c1,c2" or "{c1,c2}"
Point ParsePoint(std::string_view text);
ExtScalar ParseExtScalar(std::string_view text);

std::string Print(const Term& t);
std::string Print(const Action& a);
std::string Print(const CommState& s);
std::string Print(const ActionPattern& h);
std::string Print(const ChannelSet& c);
// `rec root { X = ...; ... }`
std::string PrintSpec(const RecSpec& e, const std::string& root);

}  // namespace stpa

#endif  // STPA_SYNTAX_HPP_
