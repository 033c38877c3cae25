#pragma once

// Bundled default resources. Must stay byte-identical to the files under
// data/ (checked by resources_test).

#include <string_view>

namespace dialsum::resources {

inline constexpr std::string_view kMaleNames = R"DS(James
John
Robert
Michael
William
David
Richard
Joseph
Thomas
Charles
Christopher
Daniel
Matthew
Anthony
Mark
Donald
Steven
Paul
Andrew
Joshua
Kenneth
Kevin
Brian
George
Timothy
Ronald
Edward
Jason
Jeffrey
Ryan
Jacob
Gary
Nicholas
Eric
Jonathan
Stephen
Larry
Justin
Scott
Brandon
Benjamin
Samuel
Gregory
Alexander
Frank
Patrick
Raymond
Jack
Dennis
Jerry
Tyler
Aaron
Jose
Adam
Nathan
Henry
Douglas
Zachary
Peter
Kyle
Ethan
Walter
Noah
Jeremy
Christian
Keith
Roger
Terry
Gerald
Harold
Sean
Austin
Carl
Arthur
Lawrence
Dylan
Jesse
Jordan
Bryan
Billy
Joe
Bruce
Gabriel
Logan
Albert
Willie
Alan
Juan
Wayne
Elijah
Randy
Roy
Vincent
Ralph
Eugene
Russell
Bobby
Mason
Philip
Louis
)DS";

inline constexpr std::string_view kFemaleNames = R"DS(Mary
Patricia
Jennifer
Linda
Elizabeth
Barbara
Susan
Jessica
Sarah
Karen
Lisa
Nancy
Betty
Margaret
Sandra
Ashley
Kimberly
Emily
Donna
Michelle
Carol
Amanda
Dorothy
Melissa
Deborah
Stephanie
Rebecca
Sharon
Laura
Cynthia
Kathleen
Amy
Angela
Shirley
Anna
Brenda
Pamela
Emma
Nicole
Helen
Samantha
Katherine
Christine
Debra
Rachel
Carolyn
Janet
Catherine
Maria
Heather
Diane
Ruth
Julie
Olivia
Joyce
Virginia
Victoria
Kelly
Lauren
Christina
Joan
Evelyn
Judith
Megan
Andrea
Cheryl
Hannah
Jacqueline
Martha
Gloria
Teresa
Ann
Sara
Madison
Frances
Kathryn
Janice
Jean
Abigail
Alice
Judy
Sophia
Grace
Denise
Amber
Doris
Marilyn
Danielle
Beverly
Isabella
Theresa
Diana
Natalie
Brittany
Charlotte
Marie
Kayla
Alexis
Lori
Rose
)DS";

inline constexpr std::string_view kGenderLexicon = R"DS(aaron	male
abigail	female
adam	male
adrian	male
alan	male
albert	male
alex	unknown
alexander	male
alexis	female
alfred	male
alice	female
alicia	female
allen	male
allison	female
amanda	female
amber	female
amelia	female
amy	female
andrea	female
andrew	male
andy	male
angela	female
ann	female
anna	female
anthony	male
antonio	male
arthur	male
ashley	female
austin	male
ava	female
barbara	female
bella	female
ben	male
benjamin	male
beth	female
betty	female
beverly	female
bill	male
billy	male
bob	male
bobby	male
brad	male
brandon	male
brenda	female
brett	male
brian	male
bridget	female
brittany	female
bruce	male
bryan	male
caleb	male
cameron	unknown
carl	male
carol	female
caroline	female
carolyn	female
casey	unknown
cassie	female
catherine	female
chad	male
charles	male
charlotte	female
cheryl	female
chloe	female
chris	unknown
christian	male
christina	female
christine	female
christopher	male
claire	female
clara	female
clark	male
colin	male
connor	male
cordelia	female
craig	male
curtis	male
cynthia	female
daisy	female
dan	male
dana	unknown
daniel	male
danielle	female
danny	male
darren	male
dave	male
david	male
deborah	female
debra	female
denise	female
dennis	male
derek	male
diana	female
diane	female
dominic	male
don	male
donald	male
donna	female
doris	female
dorothy	female
douglas	male
dustin	male
dylan	male
edward	male
edwin	male
eleanor	female
eli	male
elijah	male
eliza	female
elizabeth	female
ella	female
ellie	female
elliot	male
emilia	female
emily	female
emma	female
eric	male
erica	female
erin	female
ethan	male
eugene	male
eva	female
evan	male
evelyn	female
felix	male
fiona	female
frances	female
frank	male
fred	male
gabriel	male
gabriella	female
gary	male
gavin	male
george	male
gerald	male
gina	female
glenn	male
gloria	female
gordon	male
grace	female
graham	male
grant	male
greg	male
gregory	male
hailey	female
hannah	female
harold	male
harriet	female
harry	male
heather	female
helen	female
henry	male
holly	female
hugo	male
ian	male
ingrid	female
irene	female
isaac	male
isabel	female
isabella	female
ivan	male
ivy	female
jack	male
jacob	male
jacqueline	female
jade	female
jake	male
james	male
jamie	unknown
jane	female
janet	female
janice	female
jasmine	female
jason	male
jean	female
jeff	male
jeffrey	male
jennifer	female
jenny	female
jeremy	male
jerry	male
jess	female
jesse	male
jessica	female
jill	female
jim	male
jimmy	male
joan	female
joe	male
joel	male
john	male
jon	male
jonathan	male
jordan	male
jose	male
joseph	male
josephine	female
josh	male
joshua	male
joyce	female
juan	male
judith	female
judy	female
julia	female
julian	male
julie	female
justin	male
karen	female
karl	male
kate	female
katherine	female
kathleen	female
kathryn	female
katie	female
kayla	female
keith	male
kelly	female
ken	male
kenneth	male
kevin	male
kim	unknown
kimberly	female
kyle	male
larry	male
laura	female
lauren	female
lawrence	male
leah	female
lena	female
leo	male
leon	male
liam	male
lily	female
linda	female
lisa	female
logan	male
lori	female
louis	male
lucy	female
luke	male
madison	female
mandy	female
marcus	male
margaret	female
maria	female
marie	female
marilyn	female
mario	male
mark	male
martha	female
martin	male
mary	female
mason	male
matt	male
matthew	male
max	male
meg	female
megan	female
melissa	female
mia	female
michael	male
michelle	female
mike	male
miles	male
molly	female
monica	female
morgan	unknown
nadia	female
nancy	female
naomi	female
natalie	female
nathan	male
neil	male
nicholas	male
nick	male
nicole	female
nina	female
noah	male
nora	female
oliver	male
olivia	female
oscar	male
owen	male
paige	female
pamela	female
patricia	female
patrick	male
paul	male
penny	female
pete	male
peter	male
phil	male
philip	male
phoebe	female
rachel	female
ralph	male
randy	male
raymond	male
rebecca	female
richard	male
rick	male
riley	unknown
rita	female
rob	male
robert	male
robin	unknown
roger	male
ron	male
ronald	male
rose	female
ross	male
roy	male
ruby	female
russell	male
ruth	female
ryan	male
sally	female
sam	unknown
samantha	female
samuel	male
sandra	female
sara	female
sarah	female
scott	male
sean	male
sharon	female
shirley	female
simon	male
sophia	female
sophie	female
stan	male
stella	female
stephanie	female
stephen	male
steve	male
steven	male
stuart	male
susan	female
susie	female
tara	female
taylor	unknown
ted	male
teresa	female
terry	male
theresa	female
thomas	male
tim	male
timothy	male
tina	female
tom	male
tommy	male
tony	male
tracy	female
travis	male
trevor	male
tyler	male
vanessa	female
victor	male
victoria	female
vince	male
vincent	male
virginia	female
walter	male
wayne	male
wendy	female
wesley	male
will	male
william	male
willie	male
xavier	male
zach	male
zachary	male
zoe	female
)DS";

inline constexpr std::string_view kEntityStopwords = R"DS(i
i'm
i'll
i've
i'd
ok
okay
lol
omg
haha
hi
hey
hello
yes
yeah
no
thanks
thank
please
oh
wow
sure
the
a
an
and
but
or
so
if
then
when
what
where
who
why
how
this
that
these
those
it
is
are
was
were
be
do
does
did
not
)DS";

}  // namespace dialsum::resources
